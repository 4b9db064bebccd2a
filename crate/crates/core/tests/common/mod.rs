//! Independent numerical oracles shared by the integration tests.
//!
//! Nothing here calls into the library's quadrature or special functions:
//! integrals go through adaptive Gauss–Kronrod, gamma and erfc through statrs.

#![allow(dead_code, clippy::excessive_precision)]

use covert_core::SystemParams;

// 15-point Kronrod nodes on [-1, 1] (nonnegative half) with Kronrod and
// embedded 7-point Gauss weights.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive Gauss–Kronrod integral of `f` over `[a, b]` to absolute
/// tolerance `tol`, by recursive bisection.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (v, err) = kronrod(f, a, b);
        if err <= tol || depth >= 60 || (b - a).abs() < 1e-15 * a.abs().max(1.0) {
            return v;
        }
        let m = 0.5 * (a + b);
        rec(f, a, m, 0.5 * tol, depth + 1) + rec(f, m, b, 0.5 * tol, depth + 1)
    }
    rec(&f, a, b, tol, 0)
}

/// Integral over `[0, ∞)` split at geometrically growing breakpoints
/// `scale·2^k`, stopping once a piece contributes less than `tol`.
pub fn integrate_half_line<F: Fn(f64) -> f64>(f: F, scale: f64, tol: f64) -> f64 {
    let mut total = integrate(&f, 0.0, scale, tol * 0.1);
    let mut lo = scale;
    for _ in 0..200 {
        let piece = integrate(&f, lo, 2.0 * lo, tol * 0.1);
        total += piece;
        if piece.abs() < tol * 1e-3 {
            break;
        }
        lo *= 2.0;
    }
    total
}

pub fn gamma_p(a: f64, x: f64) -> f64 {
    statrs::function::gamma::gamma_lr(a, x)
}

pub fn gamma_q(a: f64, x: f64) -> f64 {
    statrs::function::gamma::gamma_ur(a, x)
}

pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

pub fn q_oracle(x: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(x / std::f64::consts::SQRT_2)
}

/// `E1(x) = e^{-x} ∫_0^∞ e^{-s}/(x+s) ds`, by adaptive integration.
pub fn e1_oracle(x: f64) -> f64 {
    let inner = integrate_half_line(|s| (-s).exp() / (x + s), x.max(1e-3), 1e-15);
    (-x).exp() * inner
}

/// Minimum detection error at normalized SNR `x`, from statrs gamma functions.
pub fn min_detection_error_oracle(x: f64, n: u32) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    let n = n as f64;
    let l = x.ln_1p();
    // thresholds over the two hypothesis variances, times n
    let idle = n * (1.0 + 1.0 / x) * l;
    let active = n * l / x;
    gamma_q(n, idle) + gamma_p(n, active)
}

/// Fading average of `f(SNR at Willie)` where the SNR is exponential with mean `mean`.
pub fn exp_average<F: Fn(f64) -> f64>(f: F, mean: f64, tol: f64) -> f64 {
    integrate_half_line(|u| f(mean * u) * (-u).exp(), 1.0, tol)
}

pub fn mean_snr_at_willie(params: &SystemParams, p_a: f64) -> f64 {
    p_a * params.lambda_aw / (params.phi * params.p_w + params.sigma_w2)
}

/// SINR density at Bob, written out from the model.
pub fn sinr_density(params: &SystemParams, p_a: f64, t: f64) -> f64 {
    let (a, w, s) = (
        p_a * params.lambda_ab,
        params.p_w * params.lambda_wb,
        params.sigma_b2,
    );
    (s * (a + w * t) + a * w) / ((a + w * t) * (a + w * t)) * (-s * t / a).exp()
}

/// Point past which the SINR at Bob has tail mass below `mass`.
pub fn sinr_tail_cutoff(params: &SystemParams, p_a: f64, mass: f64) -> f64 {
    let (a, w, s) = (
        p_a * params.lambda_ab,
        params.p_w * params.lambda_wb,
        params.sigma_b2,
    );
    let survival = |t: f64| a * (-s * t / a).exp() / (a + w * t);
    let mut t = a / s;
    while survival(t) > mass {
        t *= 2.0;
    }
    t
}

/// Average decoding error under the piecewise-linear error surrogate,
/// integrated numerically against the SINR density.
pub fn linearized_decoding_error_oracle(params: &SystemParams, p_a: f64, rate: f64, n: u32) -> f64 {
    let alpha = rate.exp2() - 1.0;
    let beta = (n as f64 / (2.0 * std::f64::consts::PI * ((2.0 * rate).exp2() - 1.0))).sqrt();
    let lo = (alpha - 0.5 / beta).max(0.0);
    let hi = alpha + 0.5 / beta;
    let pdf = |t: f64| sinr_density(params, p_a, t);
    integrate(pdf, 0.0, lo, 1e-13)
        + integrate(|t| pdf(t) * (0.5 - beta * (t - alpha)), lo, hi, 1e-13)
}

/// Evenly spaced grid with both endpoints.
pub fn linspace(a: f64, b: f64, k: usize) -> Vec<f64> {
    (0..k)
        .map(|i| a + (b - a) * i as f64 / (k - 1) as f64)
        .collect()
}
