// Runs the tank inspection mission from configs/mission_tank.toml and
// shows the summary plus a few trace rows.
//
// cargo run --example mission

use std::path::Path;

use magclimb::config::load_document;
use magclimb::control_sim::{run_mission, Outcome};
use magclimb::report::render_mission;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let configs = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let doc = load_document(&configs.join("mission_tank.toml"))?;
    let script = doc.mission.expect("the file has a [mission] section");

    let trace = run_mission(&doc.robot, &script, &doc.constants, 7, &doc.sim)?;
    print!("{}", render_mission(&trace.summary()));

    let csv = trace.to_csv_string()?;
    for line in csv.lines().take(4) {
        println!("{line}");
    }
    assert_eq!(trace.outcome, Outcome::CliffStop);

    // Same seed, same bytes.
    let again = run_mission(&doc.robot, &script, &doc.constants, 7, &doc.sim)?;
    assert_eq!(csv, again.to_csv_string()?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
