//! Bob's decoding error: the finite-blocklength normal approximation per
//! channel realization, the SINR law under jamming, and its fading average
//! under the piecewise-linear approximation of the Q-function.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ChannelRealization, SystemParams};
use crate::specfun::{exp_integral_e1_scaled, q_function};

/// Smallest admissible rate. The linearization slope diverges as `R → 0`.
pub const R_MIN: f64 = 1e-3;

/// Received SINR at Bob for one realization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkBudget {
    pub gamma_b: f64,
}

impl LinkBudget {
    pub fn from_realization(params: &SystemParams, p_a: f64, channel: &ChannelRealization) -> Self {
        Self {
            gamma_b: channel.sinr_at_bob(params, p_a),
        }
    }
}

/// Normal-approximation block error probability at SINR `gamma_b`, rate
/// `rate` (bpcu) and blocklength `n`:
///
/// `Q( sqrt(n) (ln(1+γ) - R ln 2) / sqrt(1 - (1+γ)^-2) )`.
///
/// Zero SINR has zero capacity and errs with certainty.
pub fn decoding_error_prob(gamma_b: f64, rate: f64, n: u32) -> f64 {
    if gamma_b <= 0.0 {
        return 1.0;
    }
    // 1 - (1+γ)^-2 = γ(2+γ)/(1+γ)^2, written to keep precision for tiny γ
    let dispersion = gamma_b * (2.0 + gamma_b) / ((1.0 + gamma_b) * (1.0 + gamma_b));
    let arg =
        (n as f64).sqrt() * (gamma_b.ln_1p() - rate * std::f64::consts::LN_2) / dispersion.sqrt();
    q_function(arg).unwrap_or(1.0)
}

/// Density of Bob's SINR `P_a g_ab / (P_w g_wb + σ_b²)` under Rayleigh fading.
pub fn snr_pdf(params: &SystemParams, p_a: f64, t: f64) -> f64 {
    if t < 0.0 {
        return 0.0;
    }
    let a = p_a * params.lambda_ab;
    let w = params.p_w * params.lambda_wb;
    let s = params.sigma_b2;
    let denom = a + w * t;
    (s * denom + a * w) / (denom * denom) * (-s * t / a).exp()
}

/// `P(γ_b > t) = P_a λ_ab e^{-σ_b² t / (P_a λ_ab)} / (P_a λ_ab + P_w λ_wb t)`.
pub fn snr_survival(params: &SystemParams, p_a: f64, t: f64) -> f64 {
    if t <= 0.0 {
        return 1.0;
    }
    let a = p_a * params.lambda_ab;
    let w = params.p_w * params.lambda_wb;
    a * (-params.sigma_b2 * t / a).exp() / (a + w * t)
}

/// Piecewise-linear Q-function surrogate in the SINR domain: one below
/// `α - 1/(2β)`, zero above `α + 1/(2β)`, `1/2 - β(t - α)` in between.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QLinearization {
    /// SINR at which the rate equals capacity, `2^R - 1`.
    pub alpha: f64,
    /// Slope magnitude `sqrt(n / (2π (4^R - 1)))`.
    pub beta: f64,
}

impl QLinearization {
    pub fn new(rate: f64, n: u32) -> Self {
        let alpha = rate.exp2() - 1.0;
        let beta = (n as f64 / (2.0 * std::f64::consts::PI * ((2.0 * rate).exp2() - 1.0))).sqrt();
        Self { alpha, beta }
    }

    pub fn lower(&self) -> f64 {
        self.alpha - 0.5 / self.beta
    }

    pub fn upper(&self) -> f64 {
        self.alpha + 0.5 / self.beta
    }

    /// Surrogate error probability at SINR `t`.
    pub fn eval(&self, t: f64) -> f64 {
        (0.5 - self.beta * (t - self.alpha)).clamp(0.0, 1.0)
    }
}

fn check_args(func: &'static str, p_a: f64, rate: f64, n: u32) -> Result<()> {
    if !(p_a >= 0.0) {
        return Err(Error::domain(
            func,
            format!("power must be nonnegative, got {p_a}"),
        ));
    }
    if !(rate >= R_MIN) {
        return Err(Error::domain(
            func,
            format!("rate must be at least {R_MIN} bpcu, got {rate}"),
        ));
    }
    if n == 0 {
        return Err(Error::domain(func, "blocklength must be positive"));
    }
    Ok(())
}

/// Fading-averaged decoding error under jamming, in closed form.
///
/// With `A = P_a λ_ab`, `W = P_w λ_wb`, `s = σ_b²`, the surrogate integrates to
/// `1 - S(L) + g(U) - g(L)` where `S` is the SINR survival function,
/// `L, U = α ∓ 1/(2β)`, and
///
/// `g(x) = -S(x)(1/2 - β(x - α)) + β (A/W) e^{s/W} E1(s x/A + s/W)`.
///
/// The exponential integral is evaluated in scaled form so that tiny jamming
/// powers (huge `s/W`) stay finite. Zero jamming dispatches to
/// [`avg_decoding_error_passive`]. Output is clamped to `[0, 1]`.
pub fn avg_decoding_error(params: &SystemParams, p_a: f64, rate: f64, n: u32) -> Result<f64> {
    check_args("avg_decoding_error", p_a, rate, n)?;
    if params.p_w == 0.0 {
        return avg_decoding_error_passive(params, p_a, rate, n);
    }
    if p_a == 0.0 {
        return Ok(1.0);
    }
    let a = p_a * params.lambda_ab;
    let w = params.p_w * params.lambda_wb;
    let s = params.sigma_b2;
    let lin = QLinearization::new(rate, n);
    let upper = lin.upper();
    let mut lower = lin.lower();
    // Below t = -A/W the SINR law and the E1 argument both leave their domain;
    // integrate from the support edge instead.
    if a + w * lower <= 0.0 {
        lower = 0.0;
    }
    let g = |x: f64| -> f64 {
        let decay = (-s * x / a).exp();
        let linear = -snr_survival_raw(a, w, s, x) * (0.5 - lin.beta * (x - lin.alpha));
        let tail = if decay == 0.0 {
            0.0
        } else {
            lin.beta
                * (a / w)
                * decay
                * exp_integral_e1_scaled(s / w + s * x / a).expect("positive argument")
        };
        linear + tail
    };
    let value = 1.0 - snr_survival_raw(a, w, s, lower) + g(upper) - g(lower);
    Ok(clamp_probability(value))
}

// Survival formula without the t <= 0 shortcut, for the closed form's lower limit.
fn snr_survival_raw(a: f64, w: f64, s: f64, t: f64) -> f64 {
    a * (-s * t / a).exp() / (a + w * t)
}

/// Fading-averaged decoding error with a passive warder (no jamming):
///
/// `1 - (P_a λ_ab β / σ_b²) e^{-σ_b² α/(P_a λ_ab)} (e^{σ_b²/(2 P_a λ_ab β)} - e^{-σ_b²/(2 P_a λ_ab β)})`,
///
/// evaluated as `1 - (Aβ/s)(e^{-sL/A} - e^{-sU/A})` so no factor overflows on its own.
pub fn avg_decoding_error_passive(
    params: &SystemParams,
    p_a: f64,
    rate: f64,
    n: u32,
) -> Result<f64> {
    check_args("avg_decoding_error_passive", p_a, rate, n)?;
    if p_a == 0.0 {
        return Ok(1.0);
    }
    let a = p_a * params.lambda_ab;
    let s = params.sigma_b2;
    let lin = QLinearization::new(rate, n);
    let bracket = (-s * lin.lower() / a).exp() - (-s * lin.upper() / a).exp();
    Ok(clamp_probability(1.0 - a * lin.beta / s * bracket))
}

fn clamp_probability(v: f64) -> f64 {
    if v.is_nan() {
        1.0
    } else {
        v.clamp(0.0, 1.0)
    }
}
