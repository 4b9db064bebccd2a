//! Covertness/reliability trade-off at n = 100: for each covertness slack,
//! the decoding error reached by the throughput-optimal design at the covert
//! power.

use covert_core::optimizer::{reliability_frontier_point, OptimizerOptions};
use covert_core::{Constraints, SystemParams};

fn main() -> Result<(), covert_core::Error> {
    let opts = OptimizerOptions::default();
    println!("P_w,epsilon,P_a_star,R,kappa");
    for p_w in [0.0, 50.0, 100.0] {
        let params = SystemParams::default().with_jamming(p_w);
        for i in 0..15 {
            let epsilon = 0.02 + 0.02 * i as f64;
            let cons = Constraints {
                epsilon,
                ..Constraints::default()
            };
            let pt = reliability_frontier_point(&params, 100, &cons, &opts)?;
            println!(
                "{p_w},{},{},{},{}",
                pt.epsilon, pt.p_a_star, pt.rate, pt.kappa
            );
        }
    }
    Ok(())
}
