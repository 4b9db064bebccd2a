//! Effective throughput against blocklength: optimized rate versus a fixed
//! rate at the same covert power. Prints CSV.
//!
//!     cargo run --release --example blocklength_tradeoff -- [fixed_rate]

use covert_core::optimizer::{fixed_rate_point, solve_inner, OptimizerOptions};
use covert_core::{Constraints, SystemParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rate = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(1.0);
    let cons = Constraints::default();
    let opts = OptimizerOptions::default();

    println!("P_w,n,eta_opt,R_star,eta_fixed,delta_fixed");
    for p_w in [0.0, 100.0] {
        let params = SystemParams::default().with_jamming(p_w);
        for n in (cons.n_min..=cons.n_max).step_by(10) {
            let opt = solve_inner(&params, n, &cons, &opts)?;
            let fixed = fixed_rate_point(&params, n, rate, &cons, &opts)?;
            println!(
                "{p_w},{n},{},{},{},{}",
                opt.eta, opt.r_star, fixed.eta, fixed.delta_avg
            );
        }
    }
    Ok(())
}
