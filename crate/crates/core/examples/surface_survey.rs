// Which surfaces can the robot hold on to? Runs assess over a handful of
// typical tank and pipe surfaces and lists the weakest criterion for each.

use magclimb::model::{reference_design, Constants, Curvature, Side, SurfaceSpec};
use magclimb::report::{sig6, Table};
use magclimb::stability::{assess, AssessOptions};
use magclimb::units::deg;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = reference_design();
    let c = Constants::default();
    let opts = AssessOptions::default();

    let surfaces = [
        (
            "wall",
            SurfaceSpec { inclination: deg(90.0), side: Side::Top, curvature: Curvature::Flat, mu: 0.4, coated: false },
        ),
        ("painted wall", SurfaceSpec { coated: true, ..SurfaceSpec::vertical_flat(0.4) }),
        (
            "roof underside 30",
            SurfaceSpec {
                inclination: deg(30.0),
                side: Side::Underneath,
                curvature: Curvature::Flat,
                mu: 0.5,
                coated: true,
            },
        ),
        (
            "pipe d=900 mm",
            SurfaceSpec { curvature: Curvature::Radius(0.45), coated: true, ..SurfaceSpec::vertical_flat(0.4) },
        ),
        (
            "pipe d=300 mm",
            SurfaceSpec { curvature: Curvature::Radius(0.15), coated: true, ..SurfaceSpec::vertical_flat(0.4) },
        ),
        (
            "pipe d=100 mm",
            SurfaceSpec { curvature: Curvature::Radius(0.05), coated: true, ..SurfaceSpec::vertical_flat(0.4) },
        ),
    ];

    let mut table = Table::new(["surface", "adhesion_N", "weakest", "margin", "ok"]);
    for (name, s) in &surfaces {
        let r = assess(&spec, s, &c, &opts)?;
        let weakest = r.criteria.iter().min_by(|a, b| a.margin.total_cmp(&b.margin)).unwrap();
        table.row([
            name.to_string(),
            sig6(r.adhesion_available.total),
            weakest.criterion.name().to_owned(),
            sig6(weakest.margin),
            if r.all_pass() { "yes" } else { "no" }.to_owned(),
        ]);
    }
    print!("{}", table.render());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
