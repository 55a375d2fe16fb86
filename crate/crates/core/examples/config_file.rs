// Loading robot descriptions from TOML, and what a bad file looks like.

use std::path::Path;

use magclimb::config::{load_document, parse_document};
use magclimb::model::reference_design;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let configs = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let doc = load_document(&configs.join("robot.toml"))?;
    let reference = reference_design();
    println!("robot.toml: mass {} kg, {} contacting blocks", doc.robot.mass, doc.robot.contacting_blocks());
    assert!((doc.robot.drive.stall_torque - reference.drive.stall_torque).abs() < 1e-12);

    let bad = "schema_version = 1\n\n[robot.linkage]\na = \"33.7 kg\"\n";
    match parse_document(bad, "inline.toml") {
        Ok(_) => unreachable!("mass unit on a length"),
        Err(e) => println!("{e}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
