//! Joint choice of power, rate and blocklength under covertness and
//! reliability constraints, with the per-blocklength trace.

use covert_core::optimizer::{optimize, OptimizerOptions};
use covert_core::{Constraints, SystemParams};

fn main() -> Result<(), covert_core::Error> {
    let params = SystemParams::default();
    let constraints = Constraints::default();
    let result = optimize(&params, &constraints, &OptimizerOptions::default())?;

    match result.best {
        Some(best) => println!(
            "best: n={} P_a={:.4} W R={:.5} bpcu eta={:.4} bits ({:?}/{:?} binding)",
            best.n, best.p_a_star, best.r_star, best.eta, best.power_binding, best.rate_binding
        ),
        None => println!("no blocklength in the window is feasible"),
    }
    for s in result.trace.iter().step_by(25) {
        println!(
            "n={:>3} P_a={:.4} R={:.5} eta={:>8.4} xi={:.6} delta={:.6}",
            s.n, s.p_a_star, s.r_star, s.eta, s.xi_avg, s.delta_avg
        );
    }
    Ok(())
}
