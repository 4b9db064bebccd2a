//! Willie's radiometer: per-round detection error, its optimal threshold,
//! fading averages, the closed-form lower approximation, and the
//! KL/Pinsker benchmark.
//!
//! Per-round quantities depend on the channel only through the
//! signal-to-noise ratio at Willie, `x = P_a |h_aw|^2 / σ²` with
//! `σ² = φ P_w + σ_w²`. Under Rayleigh fading `x` is exponential with mean
//! `P_a λ_aw / σ²`.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{willie_noise_floor, SystemParams};
use crate::quadrature::{exponential_average, QuadratureConfig};
use crate::specfun::{exp_integral_e1_scaled, gamma_pq, ln_gamma};

/// Detection error `P(T > τ | H0) + P(T < τ | H1)` of the radiometer with
/// threshold `tau` for one channel realization.
pub fn detection_error_prob(
    params: &SystemParams,
    p_a: f64,
    g_aw: f64,
    n: u32,
    tau: f64,
) -> Result<f64> {
    if !(tau >= 0.0) {
        return Err(Error::domain(
            "detection_error_prob",
            format!("threshold must be nonnegative, got {tau}"),
        ));
    }
    if n == 0 {
        return Err(Error::domain(
            "detection_error_prob",
            "blocklength must be positive",
        ));
    }
    let sigma2 = willie_noise_floor(params);
    let nf = n as f64;
    let (_, false_alarm) = gamma_pq(nf, nf * tau / sigma2);
    let (missed, _) = gamma_pq(nf, nf * tau / (sigma2 + p_a * g_aw));
    Ok((false_alarm + missed).clamp(0.0, 1.0))
}

/// Threshold minimizing the per-round detection error. Falls back to `σ²`
/// when Alice's received power is zero.
pub fn optimal_threshold(params: &SystemParams, p_a: f64, g_aw: f64) -> f64 {
    let sigma2 = willie_noise_floor(params);
    let x = p_a * g_aw / sigma2;
    if x <= 0.0 {
        return sigma2;
    }
    // σ²(σ² + y)/y · ln((σ² + y)/σ²) with y = xσ²
    sigma2 * (1.0 + 1.0 / x) * x.ln_1p()
}

/// Minimum per-round detection error, i.e. [`detection_error_prob`] at
/// [`optimal_threshold`].
pub fn min_detection_error(params: &SystemParams, p_a: f64, g_aw: f64, n: u32) -> f64 {
    min_detection_error_at_snr(p_a * g_aw / willie_noise_floor(params), n)
}

/// Minimum per-round detection error as a function of Willie's SNR `x`.
pub fn min_detection_error_at_snr(x: f64, n: u32) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    let nf = n as f64;
    let l = x.ln_1p();
    let upper = nf * (l + l / x);
    let lower = nf * (l / x);
    let (_, false_alarm) = gamma_pq(nf, upper);
    let (missed, _) = gamma_pq(nf, lower);
    (false_alarm + missed).clamp(0.0, 1.0)
}

/// Fading-averaged minimum detection error, by Gauss–Chebyshev quadrature.
pub fn avg_detection_error_quadrature(
    params: &SystemParams,
    p_a: f64,
    n: u32,
    quad: QuadratureConfig,
) -> f64 {
    if p_a <= 0.0 {
        return 1.0;
    }
    let mean_snr = p_a * params.lambda_aw / willie_noise_floor(params);
    exponential_average(quad, |u| min_detection_error_at_snr(mean_snr * u, n)).clamp(0.0, 1.0)
}

/// `e^{-n} n^n / Γ(n)`, the slope of the lower approximation in `ln(1 + x)`.
pub fn lower_approx_slope(n: u32) -> f64 {
    let nf = n as f64;
    (nf * nf.ln() - nf - ln_gamma(nf)).exp()
}

/// SNR at which the lower approximation reaches zero: `exp(1/slope) - 1`.
pub fn lower_approx_cutoff(n: u32) -> f64 {
    (1.0 / lower_approx_slope(n)).exp_m1()
}

/// Closed-form lower approximation of the per-round minimum detection error.
pub fn xi_lower_approx(params: &SystemParams, p_a: f64, g_aw: f64, n: u32) -> f64 {
    xi_lower_approx_at_snr(p_a * g_aw / willie_noise_floor(params), n)
}

pub fn xi_lower_approx_at_snr(x: f64, n: u32) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    if x >= lower_approx_cutoff(n) {
        return 0.0;
    }
    (1.0 - lower_approx_slope(n) * x.ln_1p()).max(0.0)
}

/// Fading average of [`xi_lower_approx`] in closed form:
///
/// `1 - c e^a [E1(a) - E1(a e^{1/c})]` with `c` the slope and `a = σ²/(P_a λ_aw)`.
pub fn avg_detection_error_approx(params: &SystemParams, p_a: f64, n: u32) -> f64 {
    if p_a <= 0.0 {
        return 1.0;
    }
    let a = willie_noise_floor(params) / (p_a * params.lambda_aw);
    let c = lower_approx_slope(n);
    let far = a * (1.0 / c).exp();
    // e^a E1(a) - e^{a - far} · e^{far} E1(far)
    let near_term = exp_integral_e1_scaled(a).expect("a > 0");
    let far_term = if far.is_finite() {
        (a - far).exp() * exp_integral_e1_scaled(far).expect("far > 0")
    } else {
        0.0
    };
    (1.0 - c * (near_term - far_term)).clamp(0.0, 1.0)
}

/// `D(P0 || P1) = n (ln(1+x) + 1/(1+x) - 1)` between the `n`-sample
/// observation laws without and with Alice's signal.
pub fn kl_divergence_at_snr(x: f64, n: u32) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    (n as f64 * (x.ln_1p() - x / (1.0 + x))).max(0.0)
}

/// Pinsker lower bound `max(0, 1 - sqrt(D/2))` on the per-round detection error.
pub fn kl_lower_bound(params: &SystemParams, p_a: f64, g_aw: f64, n: u32) -> f64 {
    kl_lower_bound_at_snr(p_a * g_aw / willie_noise_floor(params), n)
}

pub fn kl_lower_bound_at_snr(x: f64, n: u32) -> f64 {
    (1.0 - (0.5 * kl_divergence_at_snr(x, n)).sqrt()).max(0.0)
}

/// Fading-averaged divergence `E[D]`, closed form
/// `n((1 + a) e^a E1(a) - 1)` with `a = σ²/(P_a λ_aw)`.
pub fn avg_kl_divergence(params: &SystemParams, p_a: f64, n: u32) -> f64 {
    if p_a <= 0.0 {
        return 0.0;
    }
    let a = willie_noise_floor(params) / (p_a * params.lambda_aw);
    let e1s = exp_integral_e1_scaled(a).expect("a > 0");
    (n as f64 * ((1.0 + a) * e1s - 1.0)).max(0.0)
}

/// KL benchmark for the fading channel: Pinsker applied to the
/// fading-averaged divergence, `max(0, 1 - sqrt(E[D]/2))`.
pub fn avg_kl_bound(params: &SystemParams, p_a: f64, n: u32) -> f64 {
    (1.0 - (0.5 * avg_kl_divergence(params, p_a, n)).sqrt()).max(0.0)
}

/// Fading average of the per-round Pinsker bound [`kl_lower_bound`].
///
/// Always at least [`avg_kl_bound`] (the square root is concave).
pub fn avg_kl_bound_pointwise(
    params: &SystemParams,
    p_a: f64,
    n: u32,
    quad: QuadratureConfig,
) -> f64 {
    if p_a <= 0.0 {
        return 1.0;
    }
    let mean_snr = p_a * params.lambda_aw / willie_noise_floor(params);
    exponential_average(quad, |u| kl_lower_bound_at_snr(mean_snr * u, n)).clamp(0.0, 1.0)
}

/// Which average detection error the covertness constraint is checked with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CovertnessMetric {
    /// Quadrature of the exact per-round error.
    #[default]
    Exact,
    /// Closed-form average of the lower approximation.
    Approx,
}

impl CovertnessMetric {
    pub fn evaluate(self, params: &SystemParams, p_a: f64, n: u32, quad: QuadratureConfig) -> f64 {
        match self {
            CovertnessMetric::Exact => avg_detection_error_quadrature(params, p_a, n, quad),
            CovertnessMetric::Approx => avg_detection_error_approx(params, p_a, n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CovertnessTimings {
    pub exact_s: f64,
    pub approx_s: f64,
    pub kl_s: f64,
}

/// The three fading-averaged covertness metrics at one operating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CovertnessReport {
    pub xi_exact_avg: f64,
    pub xi_approx_avg: f64,
    pub xi_kl_avg: f64,
    pub timings: CovertnessTimings,
}

pub fn covertness_report(
    params: &SystemParams,
    p_a: f64,
    n: u32,
    quad: QuadratureConfig,
) -> CovertnessReport {
    let t = Instant::now();
    let xi_exact_avg = avg_detection_error_quadrature(params, p_a, n, quad);
    let exact_s = t.elapsed().as_secs_f64();
    let t = Instant::now();
    let xi_approx_avg = avg_detection_error_approx(params, p_a, n);
    let approx_s = t.elapsed().as_secs_f64();
    let t = Instant::now();
    let xi_kl_avg = avg_kl_bound(params, p_a, n);
    let kl_s = t.elapsed().as_secs_f64();
    CovertnessReport {
        xi_exact_avg,
        xi_approx_avg,
        xi_kl_avg,
        timings: CovertnessTimings {
            exact_s,
            approx_s,
            kl_s,
        },
    }
}
