// The transformation linkage: feed-screw travel → slider → crank angle →
// contact radius, for both radius formulas.

use magclimb::mechanism::{
    alpha_for_radius, local_ratios, motor_revs_to_travel, radius_from_alpha, slider_branch, travel_radius_table,
    write_travel_table, RadiusVariant,
};
use magclimb::model::LinkageParams;
use magclimb::report::{render_mechanism, sig6};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = LinkageParams::default();
    let branch = slider_branch(&p);

    for variant in [RadiusVariant::Derivation, RadiusVariant::AsPrinted] {
        let rows = travel_radius_table(&p, 31, variant)?;
        println!("{variant:?}");
        print!("{}", render_mechanism(&rows, &branch));
    }

    let rows = travel_radius_table(&p, 7, RadiusVariant::Derivation)?;
    let mut csv = Vec::new();
    write_travel_table(&rows, &mut csv)?;
    print!("{}", String::from_utf8(csv)?);

    let mid = 0.5 * (branch.alpha_min + branch.alpha_max);
    let r = local_ratios(mid, &p)?;
    println!(
        "at alpha {} deg: {} deg per mm of slider, e/a = {}",
        sig6(mid.to_degrees()),
        sig6(r.deg_per_mm),
        sig6(r.e_over_a)
    );

    let target = radius_from_alpha(mid, &p, RadiusVariant::Derivation)?;
    let alpha = alpha_for_radius(target, &p, RadiusVariant::Derivation)?;
    assert!((alpha - mid).abs() < 1e-9);
    println!("one motor revolution moves the screw {} mm", sig6(motor_revs_to_travel(1.0, &p) * 1000.0));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
