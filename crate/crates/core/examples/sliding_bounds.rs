// Worst case over all inclinations: the endpoint bound (φ = 90°) next to
// the true interior maximum, which sits at tan φ = 1/μ.

use magclimb::model::Side;
use magclimb::report::{sig6, Table};
use magclimb::stability::{sliding_required, sliding_worst_case};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = 30.0;
    let mut table = Table::new(["mu", "endpoint_N", "analytic_N", "argmax_deg", "scan_N"]);
    for mu in [0.4, 0.5, 0.6, 0.8, 1.0, 2.0] {
        let b = sliding_worst_case(p, mu);
        // Coarse scan as a cross-check.
        let scan = (1..=9000)
            .map(|i| sliding_required(p, (i as f64 / 100.0).to_radians(), mu, Side::Underneath))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .fold(0.0, f64::max);
        table.row([
            sig6(mu),
            sig6(b.endpoint_bound),
            sig6(b.analytic_bound),
            sig6(b.argmax_phi.to_degrees()),
            sig6(scan),
        ]);
        assert!((scan - b.analytic_bound).abs() / b.analytic_bound < 1e-6);
    }
    print!("{}", table.render());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
