// A robot with weakened magnets drives from a floor plate onto an oily
// wall. It holds on the floor; on the wall friction is too low for the
// remaining adhesion and the run stops at the first failure event.

use magclimb::control_sim::{run_mission, MissionScript, Segment, SimOptions};
use magclimb::model::{reference_design, Constants, Curvature, Side, SurfaceSpec};
use magclimb::report::render_mission;
use magclimb::units::deg;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut spec = reference_design();
    spec.magnet.block_force_nominal = 8.0;

    let floor =
        SurfaceSpec { inclination: deg(5.0), side: Side::Top, curvature: Curvature::Flat, mu: 0.5, coated: false };
    let wall = SurfaceSpec::vertical_flat(0.2);
    let script = MissionScript {
        segments: vec![
            Segment { surface: floor, length: 0.5, speed_ref: 0.2 },
            Segment { surface: wall, length: 1.0, speed_ref: 0.2 },
        ],
        ..MissionScript::default()
    };
    let trace = run_mission(&spec, &script, &Constants::default(), 1, &SimOptions::default())?;
    print!("{}", render_mission(&trace.summary()));
    assert!(trace.has_failure());
    // The failure happens at the wall, not on the floor.
    assert!(trace.summary().distance > 0.45);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
