// Sliding envelope for magnets weakened to a third of their strength:
// where on the (φ, μ) grid does the robot still hold?

use magclimb::envelope::{sweep, write_envelope, EnvelopeGrid};
use magclimb::model::{reference_design, Constants, Side, SurfaceSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut spec = reference_design();
    spec.magnet.block_force_nominal /= 12.0;
    let grid = EnvelopeGrid { steps: 10, ..EnvelopeGrid::default() };
    let rows = sweep(&spec, &SurfaceSpec::vertical_flat(0.4), &Constants::default(), &grid)?;

    for side in [Side::Top, Side::Underneath] {
        let ok = rows.iter().filter(|r| r.side == side && r.pass()).count();
        println!("{side}: {ok} of {} grid points hold", rows.len() / 2);
    }

    let path = std::env::temp_dir().join("magclimb_envelope_example.csv");
    write_envelope(&rows, std::fs::File::create(&path)?)?;
    println!("full sweep in {}", path.display());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
