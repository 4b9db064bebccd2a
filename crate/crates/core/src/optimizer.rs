//! Effective-throughput maximization under covertness, reliability, power
//! and blocklength constraints.
//!
//! Two layers: for a fixed blocklength the largest covert power is found by
//! bisection (average detection error falls monotonically with power), then
//! the rate is set to the smaller of the throughput-maximizing rate and the
//! largest rate meeting the reliability cap. The outer layer sweeps every
//! blocklength in the window.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::covertness::CovertnessMetric;
use crate::error::{Error, Result};
use crate::model::{Constraints, SystemParams};
use crate::quadrature::QuadratureConfig;
use crate::reliability::{avg_decoding_error, R_MIN};

const POWER_TOL: f64 = 1e-9;
const RATE_TOL: f64 = 1e-6;
const ROOT_RATE_TOL: f64 = 1e-12;
const MAX_ITER: usize = 200;
const MAX_DOUBLINGS: u32 = 20;
// R_ub = log2(1 + 50 · mean SNR at Bob)
const RATE_CEILING_SNR_FACTOR: f64 = 50.0;

/// Expected reliably delivered bits per packet, `n R (1 - δ̄)`.
pub fn effective_throughput(n: u32, rate: f64, delta_bar: f64) -> f64 {
    n as f64 * rate * (1.0 - delta_bar)
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct OptimizerOptions {
    pub quad: QuadratureConfig,
    pub metric: CovertnessMetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerBinding {
    /// Power sits on the covertness boundary.
    Covertness,
    /// The power cap is reached before covertness binds.
    PowerCap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RateBinding {
    /// Unconstrained throughput maximizer.
    ThroughputOptimum,
    /// Largest rate meeting the reliability cap.
    Reliability,
    /// No rate meets the reliability cap.
    Infeasible,
}

/// Outcome of the power layer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CovertPower {
    /// Power actually used, `min(P_a_max, covert root)`.
    pub power: f64,
    /// Power at which the average detection error equals `1 - epsilon`, if
    /// it was bracketed below `2^20 P_a_max`.
    pub covert_root: Option<f64>,
    pub binding: PowerBinding,
}

/// Largest transmit power meeting the covertness requirement, capped at
/// `P_a_max`.
pub fn solve_covert_power(
    params: &SystemParams,
    n: u32,
    constraints: &Constraints,
    opts: &OptimizerOptions,
) -> Result<CovertPower> {
    if !(constraints.epsilon > 0.0 && constraints.epsilon < 1.0) {
        return Err(Error::domain(
            "solve_covert_power",
            "epsilon must lie in (0, 1)",
        ));
    }
    let target = 1.0 - constraints.epsilon;
    let xi = |p: f64| opts.metric.evaluate(params, p, n, opts.quad);

    let cap = constraints.p_a_max;
    let mut lo = 0.0;
    let mut xi_lo = 1.0;
    let mut hi = cap;
    let mut xi_hi = xi(hi);
    let mut doublings = 0;
    while xi_hi >= target {
        if doublings == MAX_DOUBLINGS {
            return Ok(CovertPower {
                power: cap,
                covert_root: None,
                binding: PowerBinding::PowerCap,
            });
        }
        let next = 2.0 * hi;
        let xi_next = xi(next);
        if xi_next > xi_hi + 1e-12 {
            return Err(Error::Numerical(format!(
                "average detection error increased with power between {hi} W and {next} W"
            )));
        }
        lo = hi;
        xi_lo = xi_hi;
        hi = next;
        xi_hi = xi_next;
        doublings += 1;
    }

    for _ in 0..MAX_ITER {
        if hi - lo <= POWER_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let xi_mid = xi(mid);
        if xi_mid > xi_lo + 1e-12 || xi_mid < xi_hi - 1e-12 {
            return Err(Error::Numerical(format!(
                "non-monotone covertness bracket at {mid} W: {xi_mid} outside [{xi_hi}, {xi_lo}]"
            )));
        }
        if xi_mid >= target {
            lo = mid;
            xi_lo = xi_mid;
        } else {
            hi = mid;
            xi_hi = xi_mid;
        }
    }
    let root = lo;
    Ok(if root < cap {
        CovertPower {
            power: root,
            covert_root: Some(root),
            binding: PowerBinding::Covertness,
        }
    } else {
        CovertPower {
            power: cap,
            covert_root: Some(root),
            binding: PowerBinding::PowerCap,
        }
    })
}

/// Outcome of the rate layer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateSolution {
    pub feasible: bool,
    /// Chosen rate, `min(throughput optimum, reliability limit)`; zero if infeasible.
    pub rate: f64,
    pub eta: f64,
    pub delta_bar: f64,
    pub throughput_optimum: f64,
    pub reliability_limit: Option<f64>,
    pub binding: RateBinding,
}

/// Upper end of the rate search, beyond which the average decoding error is
/// essentially one.
pub fn rate_search_ceiling(params: &SystemParams, p_a: f64) -> f64 {
    (1.0 + p_a * params.lambda_ab * RATE_CEILING_SNR_FACTOR / params.sigma_b2)
        .log2()
        .max(2.0 * R_MIN)
}

/// Golden-section search for the rate maximizing `n R (1 - δ̄(R))`.
pub fn throughput_optimal_rate(params: &SystemParams, p_a: f64, n: u32) -> Result<(f64, f64)> {
    let eta = |r: f64| -> Result<f64> {
        Ok(effective_throughput(
            n,
            r,
            avg_decoding_error(params, p_a, r, n)?,
        ))
    };
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = R_MIN;
    let mut b = rate_search_ceiling(params, p_a);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = eta(c)?;
    let mut fd = eta(d)?;
    for _ in 0..MAX_ITER {
        if b - a <= RATE_TOL {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eta(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eta(d)?;
        }
    }
    let r = 0.5 * (a + b);
    Ok((r, eta(r)?))
}

/// Rate layer for a given power and blocklength.
pub fn solve_rate(
    params: &SystemParams,
    p_a: f64,
    n: u32,
    constraints: &Constraints,
) -> Result<RateSolution> {
    let delta = |r: f64| avg_decoding_error(params, p_a, r, n);
    let (r_opt, _) = throughput_optimal_rate(params, p_a, n)?;
    let infeasible = RateSolution {
        feasible: false,
        rate: 0.0,
        eta: 0.0,
        delta_bar: 1.0,
        throughput_optimum: r_opt,
        reliability_limit: None,
        binding: RateBinding::Infeasible,
    };
    if p_a <= 0.0 || delta(R_MIN)? > constraints.kappa {
        return Ok(infeasible);
    }

    let ceiling = rate_search_ceiling(params, p_a);
    let r_max = if delta(ceiling)? <= constraints.kappa {
        ceiling
    } else {
        let (mut lo, mut hi) = (R_MIN, ceiling);
        for _ in 0..MAX_ITER {
            if hi - lo <= ROOT_RATE_TOL {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if delta(mid)? <= constraints.kappa {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };

    let (rate, binding) = if r_opt <= r_max {
        (r_opt, RateBinding::ThroughputOptimum)
    } else {
        (r_max, RateBinding::Reliability)
    };
    let delta_bar = delta(rate)?;
    Ok(RateSolution {
        feasible: true,
        rate,
        eta: effective_throughput(n, rate, delta_bar),
        delta_bar,
        throughput_optimum: r_opt,
        reliability_limit: Some(r_max),
        binding,
    })
}

/// Inner-layer result for one blocklength.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InnerSolution {
    pub n: u32,
    #[serde(rename = "P_a_star")]
    pub p_a_star: f64,
    #[serde(rename = "R_star")]
    pub r_star: f64,
    pub eta: f64,
    pub feasible: bool,
    /// Average detection error at `P_a_star`, by the configured metric.
    pub xi_avg: f64,
    /// Average decoding error at `(P_a_star, R_star)`; one when infeasible.
    pub delta_avg: f64,
    pub power_binding: PowerBinding,
    pub rate_binding: RateBinding,
}

pub fn solve_inner(
    params: &SystemParams,
    n: u32,
    constraints: &Constraints,
    opts: &OptimizerOptions,
) -> Result<InnerSolution> {
    let power = solve_covert_power(params, n, constraints, opts)?;
    let rate = solve_rate(params, power.power, n, constraints)?;
    Ok(InnerSolution {
        n,
        p_a_star: power.power,
        r_star: rate.rate,
        eta: rate.eta,
        feasible: rate.feasible,
        xi_avg: opts.metric.evaluate(params, power.power, n, opts.quad),
        delta_avg: rate.delta_bar,
        power_binding: power.binding,
        rate_binding: rate.binding,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub feasible: bool,
    /// Highest-throughput feasible blocklength; ties go to the smaller `n`.
    pub best: Option<InnerSolution>,
    /// One entry per blocklength in `[n_min, n_max]`, ascending.
    pub trace: Vec<InnerSolution>,
}

/// Exhaustive outer search over the blocklength window.
pub fn optimize(
    params: &SystemParams,
    constraints: &Constraints,
    opts: &OptimizerOptions,
) -> Result<OptimizationResult> {
    params.validate()?;
    constraints.validate()?;
    let trace = (constraints.n_min..=constraints.n_max)
        .into_par_iter()
        .map(|n| solve_inner(params, n, constraints, opts))
        .collect::<Result<Vec<_>>>()?;
    let mut best: Option<InnerSolution> = None;
    for s in trace.iter().filter(|s| s.feasible) {
        if best.is_none_or(|b| s.eta > b.eta) {
            best = Some(*s);
        }
    }
    Ok(OptimizationResult {
        feasible: best.is_some(),
        best,
        trace,
    })
}

/// Throughput of a fixed-rate design at the covert power for blocklength `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedRatePoint {
    pub n: u32,
    #[serde(rename = "R")]
    pub rate: f64,
    #[serde(rename = "P_a_star")]
    pub p_a_star: f64,
    pub delta_avg: f64,
    pub eta: f64,
    pub meets_reliability: bool,
}

pub fn fixed_rate_point(
    params: &SystemParams,
    n: u32,
    rate: f64,
    constraints: &Constraints,
    opts: &OptimizerOptions,
) -> Result<FixedRatePoint> {
    let power = solve_covert_power(params, n, constraints, opts)?;
    let delta_avg = avg_decoding_error(params, power.power, rate, n)?;
    Ok(FixedRatePoint {
        n,
        rate,
        p_a_star: power.power,
        delta_avg,
        eta: effective_throughput(n, rate, delta_avg),
        meets_reliability: delta_avg <= constraints.kappa,
    })
}

/// Reliability reached by the throughput-optimal design when only
/// covertness and power constrain it: power from the covertness layer, rate
/// at the unconstrained throughput optimum. Sweeping `epsilon` traces the
/// covertness/reliability trade-off.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrontierPoint {
    pub epsilon: f64,
    #[serde(rename = "P_a_star")]
    pub p_a_star: f64,
    #[serde(rename = "R")]
    pub rate: f64,
    pub kappa: f64,
}

pub fn reliability_frontier_point(
    params: &SystemParams,
    n: u32,
    constraints: &Constraints,
    opts: &OptimizerOptions,
) -> Result<FrontierPoint> {
    let power = solve_covert_power(params, n, constraints, opts)?;
    let (rate, _) = throughput_optimal_rate(params, power.power, n)?;
    Ok(FrontierPoint {
        epsilon: constraints.epsilon,
        p_a_star: power.power,
        rate,
        kappa: avg_decoding_error(params, power.power, rate, n)?,
    })
}
