// Checks the reference robot on a vertical steel wall and prints the
// criterion table twice: in SI and in kgf / kg·cm.
//
// cargo run --example design_check

use magclimb::model::{reference_design, Constants, SurfaceSpec};
use magclimb::report::{render_stability, Units};
use magclimb::stability::{assess, AssessOptions, Criterion};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = reference_design();
    let wall = SurfaceSpec::vertical_flat(0.4);
    let opts = AssessOptions::default();
    // The drive and turn-over arithmetic was done with g = 9.8.
    let c = Constants::with_g(9.8);

    let report = assess(&spec, &wall, &c, &opts)?;
    println!("{}", render_stability(&report, &wall, &opts, &c, Units::Si));
    println!("{}", render_stability(&report, &wall, &opts, &c, Units::Gravitational));

    assert!(report.all_pass());
    assert!(report.get(Criterion::DriveTorque).margin > 0.3);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
