//! One fading realization at the warder: error probability across thresholds,
//! the optimal threshold, and how the three per-round bounds order.

use covert_core::covertness::{
    detection_error_prob, kl_lower_bound, min_detection_error, optimal_threshold, xi_lower_approx,
};
use covert_core::model::willie_noise_floor;
use covert_core::SystemParams;

fn main() -> Result<(), covert_core::Error> {
    let params = SystemParams::default();
    let (p_a, g_aw, n) = (1.0, 1e-3, 100);
    let sigma2 = willie_noise_floor(&params);
    let tau_star = optimal_threshold(&params, p_a, g_aw);
    println!("noise floor {sigma2}, optimal threshold {tau_star}");

    for k in 0..=8 {
        let tau = sigma2 * (0.96 + 0.01 * k as f64);
        println!(
            "tau {tau:.5}  error {:.6}",
            detection_error_prob(&params, p_a, g_aw, n, tau)?
        );
    }

    println!(
        "exact minimum   {:.6}",
        min_detection_error(&params, p_a, g_aw, n)
    );
    println!(
        "lower approx    {:.6}",
        xi_lower_approx(&params, p_a, g_aw, n)
    );
    println!(
        "KL bound        {:.6}",
        kl_lower_bound(&params, p_a, g_aw, n)
    );
    Ok(())
}
