//! Every simulation mode next to the analytic value it checks. Seeded, so
//! reruns print identical numbers.
//!
//!     cargo run --release --example monte_carlo_validation -- [trials] [seed]

use covert_core::covertness::avg_detection_error_quadrature;
use covert_core::reliability::avg_decoding_error;
use covert_core::{
    simulate, QuadratureConfig, SimConfig, SimMode, SystemParams, TransmissionConfig,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let trials = args
        .next()
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(100_000);
    let seed = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);

    let params = SystemParams::default();
    let tx = TransmissionConfig::default();
    let xi = avg_detection_error_quadrature(&params, tx.p_a, tx.n, QuadratureConfig::default());
    let delta = avg_decoding_error(&params, tx.p_a, tx.rate, tx.n)?;

    for mode in SimMode::ALL {
        let est = simulate(&params, &tx, &SimConfig::new(trials, seed, mode)?)?;
        let analytic = match mode {
            SimMode::DecodingAvg => delta,
            _ => xi,
        };
        let z = (est.mean - analytic) / est.std_err;
        println!(
            "{mode:<24} MC {:.6} ± {:.1e}  analytic {analytic:.6}  z {z:+.2}",
            est.mean, est.std_err
        );
    }
    Ok(())
}
