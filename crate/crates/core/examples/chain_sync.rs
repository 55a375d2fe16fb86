// Two roller-chain motors stepping through 0.1, 0.2 and 0.3 m/s. The
// second run gives the right motor a slower response and plant noise to
// show what the cross-coupling term buys.

use magclimb::control_sim::{dual_chain_sync_sim, ChainPlant, SyncGains, SyncTrace};
use magclimb::report::{sig6, Table};

fn tail_stats(trace: &SyncTrace, refs: &[f64]) -> Table {
    let mut t = Table::new(["ref", "mean_vL", "mean_vR", "max_sync_err"]);
    for (i, r) in refs.iter().enumerate() {
        let seg = trace.segment(i);
        let tail = &seg[seg.len() * 4 / 5..];
        let n = tail.len() as f64;
        t.row([
            sig6(*r),
            sig6(tail.iter().map(|s| s.v_left).sum::<f64>() / n),
            sig6(tail.iter().map(|s| s.v_right).sum::<f64>() / n),
            sig6(seg.iter().map(|s| s.sync_error.abs()).fold(0.0, f64::max)),
        ]);
    }
    t
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let refs = [0.10, 0.20, 0.30];
    let gains = SyncGains::default();

    let ideal = [ChainPlant::default(); 2];
    let trace = dual_chain_sync_sim(&refs, 5.0, &gains, &ideal, 0.1, 0);
    print!("{}", tail_stats(&trace, &refs).render());

    let mismatched = [
        ChainPlant { noise_sigma: 0.003, ..ChainPlant::default() },
        ChainPlant { time_constant: 0.5, noise_sigma: 0.003, ..ChainPlant::default() },
    ];
    for k in [0.0, gains.cross_coupling] {
        let g = SyncGains { cross_coupling: k, ..gains };
        let trace = dual_chain_sync_sim(&refs, 5.0, &g, &mismatched, 0.1, 42);
        println!("\ncross-coupling {k}, mismatched chains");
        print!("{}", tail_stats(&trace, &refs).render());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
