//! Average decoding error at the legitimate receiver in closed form, next to
//! an exact-Q Monte Carlo average.

use covert_core::reliability::{avg_decoding_error, avg_decoding_error_passive};
use covert_core::simulator::simulate_avg_decoding_error;
use covert_core::{SimConfig, SimMode, SystemParams};

fn main() -> Result<(), covert_core::Error> {
    let (p_a, n) = (1.0, 100);
    let cfg = SimConfig::new(200_000, 7, SimMode::DecodingAvg)?;

    println!(
        "{:>6} {:>6} {:>10} {:>10} {:>9}",
        "P_w", "R", "closed", "MC", "MC s.e."
    );
    for p_w in [0.0, 50.0, 100.0] {
        let params = SystemParams::default().with_jamming(p_w);
        for rate in [0.1, 0.5, 1.0] {
            let closed = avg_decoding_error(&params, p_a, rate, n)?;
            let mc = simulate_avg_decoding_error(&params, p_a, rate, n, &cfg)?;
            println!(
                "{p_w:>6} {rate:>6} {closed:>10.6} {:>10.6} {:>9.2e}",
                mc.mean, mc.std_err
            );
        }
    }

    let quiet = SystemParams::default();
    let passive = avg_decoding_error_passive(&quiet.with_jamming(0.0), p_a, 1.0, n)?;
    let faint = avg_decoding_error(&quiet.with_jamming(1e-9), p_a, 1.0, n)?;
    println!("passive form {passive:.9}, jamming at 1e-9 W {faint:.9}");
    Ok(())
}
