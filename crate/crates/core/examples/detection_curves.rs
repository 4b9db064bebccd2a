//! Average detection error against transmit power for three jamming powers:
//! quadrature, closed-form lower approximation, KL benchmark, and a
//! signal-level Monte Carlo estimate. Prints CSV.
//!
//!     cargo run --release --example detection_curves -- [trials]

use covert_core::covertness::{
    avg_detection_error_approx, avg_detection_error_quadrature, avg_kl_bound,
};
use covert_core::simulator::simulate_detection_signal_level;
use covert_core::{QuadratureConfig, SimConfig, SimMode, SystemParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let trials = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(20_000);
    let quad = QuadratureConfig::default();
    let cfg = SimConfig::new(trials, 1, SimMode::DetectionSignalLevel)?;
    let n = 100;

    println!("P_w,P_a,xi_exact,xi_approx,xi_kl,xi_sim,xi_sim_std_err");
    for p_w in [0.0, 50.0, 100.0] {
        let params = SystemParams::default().with_jamming(p_w);
        for i in 0..20 {
            let p_a = 0.1 + 4.9 * i as f64 / 19.0;
            let sim = simulate_detection_signal_level(&params, p_a, n, &cfg);
            println!(
                "{p_w},{p_a},{},{},{},{},{}",
                avg_detection_error_quadrature(&params, p_a, n, quad),
                avg_detection_error_approx(&params, p_a, n),
                avg_kl_bound(&params, p_a, n),
                sim.mean,
                sim.std_err,
            );
        }
    }
    Ok(())
}
