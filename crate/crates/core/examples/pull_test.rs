// Scale readings from lifting the robot off steel plates and pipes,
// converted to adhesion force (g = 10, as on site).

use magclimb::adhesion::{force_to_pull_test, pull_test_to_force, read_pull_tests};
use magclimb::model::{reference_design, weight, Constants};
use magclimb::report::{assess_pull_tests, render_pull_tests, sig6, Units};
use magclimb::stability::AssessOptions;

const DATA: &str = "\
surface,diameter_mm,scale_kg
non_coated_flat,,66.5
coated_flat,,60.2
coated_convex,100,24.0
coated_convex,100,24.4
coated_concave,300,38.1
coated_convex,,12
";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = reference_design();
    let c = Constants::with_g(10.0);
    let p = weight(&spec, &c);

    println!("24 kg on the scale -> {} N", pull_test_to_force(24.0, p, &c)?);
    println!("635.2 N would read {} kg", sig6(force_to_pull_test(635.2, p, &c)));

    // The last row has no diameter and is reported, not fatal.
    let data = read_pull_tests(DATA.as_bytes(), p, &c)?;
    let verdict = assess_pull_tests(&data, &spec, &c, &AssessOptions::default());
    print!("{}", render_pull_tests(&data, verdict.as_ref(), &spec, &c, Units::Gravitational));
    assert_eq!(data.errors.len(), 1);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
