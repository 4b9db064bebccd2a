//! Command implementations behind the `covert` binary.
//!
//! Each command returns the exact text it would print, so the binary only
//! parses arguments and maps errors to exit codes
//! (0 success, 2 usage or configuration error, 3 numerical fault).
//! Floats are written in shortest round-trip form.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::covertness::{
    avg_detection_error_approx, avg_detection_error_quadrature, avg_kl_bound,
    avg_kl_bound_pointwise, CovertnessMetric,
};
use crate::error::Error;
use crate::model::Scenario;
use crate::optimizer::{
    effective_throughput, fixed_rate_point, optimize, reliability_frontier_point,
    solve_covert_power, solve_inner, OptimizationResult, OptimizerOptions,
};
use crate::quadrature::QuadratureConfig;
use crate::reliability::avg_decoding_error;
use crate::simulator::{simulate, simulate_detection_signal_level, SimConfig, SimMode};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error(transparent)]
    Config(Error),
    #[error("numerical fault: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerical(_) => 3,
            _ => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Numerical(msg) => CliError::Numerical(msg),
            other => CliError::Config(other),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Scenario plus the numerical settings shared by every command.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Experiment {
    pub scenario: Scenario,
    pub quad: QuadratureConfig,
    pub metric: CovertnessMetric,
    pub seed: u64,
    pub trials: u64,
}

impl Default for Experiment {
    fn default() -> Self {
        Self {
            scenario: Scenario::default(),
            quad: QuadratureConfig::default(),
            metric: CovertnessMetric::Exact,
            seed: 1,
            trials: 100_000,
        }
    }
}

impl Experiment {
    pub fn options(&self) -> OptimizerOptions {
        OptimizerOptions {
            quad: self.quad,
            metric: self.metric,
        }
    }
}

/// One-point report of every analytic metric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalyzeRecord {
    #[serde(rename = "P_a")]
    pub p_a: f64,
    #[serde(rename = "R")]
    pub rate: f64,
    pub n: u32,
    #[serde(rename = "P_w")]
    pub p_w: f64,
    pub xi_exact: f64,
    pub xi_approx: f64,
    pub xi_kl: f64,
    pub delta: f64,
    pub eta: f64,
}

pub fn analyze_record(exp: &Experiment) -> CliResult<AnalyzeRecord> {
    exp.scenario.validate()?;
    let params = &exp.scenario.params;
    let tx = &exp.scenario.transmission;
    let delta = avg_decoding_error(params, tx.p_a, tx.rate, tx.n)?;
    Ok(AnalyzeRecord {
        p_a: tx.p_a,
        rate: tx.rate,
        n: tx.n,
        p_w: params.p_w,
        xi_exact: avg_detection_error_quadrature(params, tx.p_a, tx.n, exp.quad),
        xi_approx: avg_detection_error_approx(params, tx.p_a, tx.n),
        xi_kl: avg_kl_bound(params, tx.p_a, tx.n),
        delta,
        eta: effective_throughput(tx.n, tx.rate, delta),
    })
}

pub fn cmd_analyze(exp: &Experiment) -> CliResult<String> {
    Ok(to_json(&analyze_record(exp)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVar {
    TransmitPower,
    JammingPower,
    Blocklength,
    Epsilon,
    Kappa,
}

impl SweepVar {
    pub fn name(self) -> &'static str {
        match self {
            SweepVar::TransmitPower => "P_a",
            SweepVar::JammingPower => "P_w",
            SweepVar::Blocklength => "n",
            SweepVar::Epsilon => "epsilon",
            SweepVar::Kappa => "kappa",
        }
    }
}

impl FromStr for SweepVar {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Ok(match s {
            "P_a" => SweepVar::TransmitPower,
            "P_w" => SweepVar::JammingPower,
            "n" => SweepVar::Blocklength,
            "epsilon" => SweepVar::Epsilon,
            "kappa" => SweepVar::Kappa,
            _ => {
                return Err(CliError::Usage(format!(
                    "unknown sweep variable `{s}` (expected P_a, P_w, n, epsilon or kappa)"
                )))
            }
        })
    }
}

/// Quantities a sweep can tabulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    /// Average detection error, quadrature of the exact per-round error.
    XiExact,
    /// Average detection error, closed-form lower approximation.
    XiApprox,
    /// Pinsker bound on the fading-averaged divergence.
    XiKl,
    /// Fading average of the per-round Pinsker bound.
    XiKlPointwise,
    /// Signal-level Monte Carlo detection error (uses seed and trials).
    XiSim,
    /// Average decoding error at `(P_a, R, n)`.
    Delta,
    /// Effective throughput at `(P_a, R, n)`.
    Eta,
    /// Covert power for `n`.
    PStar,
    /// Optimized rate for `n`.
    RStar,
    /// Inner-layer optimized throughput for `n`.
    EtaOpt,
    /// Throughput at the covert power with the rate fixed at `R`.
    EtaFixed,
    /// Decoding error of the throughput-optimal design with only covertness active.
    KappaMin,
}

impl Metric {
    pub const ALL: [Metric; 12] = [
        Metric::XiExact,
        Metric::XiApprox,
        Metric::XiKl,
        Metric::XiKlPointwise,
        Metric::XiSim,
        Metric::Delta,
        Metric::Eta,
        Metric::PStar,
        Metric::RStar,
        Metric::EtaOpt,
        Metric::EtaFixed,
        Metric::KappaMin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::XiExact => "xi_exact",
            Metric::XiApprox => "xi_approx",
            Metric::XiKl => "xi_kl",
            Metric::XiKlPointwise => "xi_kl_pointwise",
            Metric::XiSim => "xi_sim",
            Metric::Delta => "delta",
            Metric::Eta => "eta",
            Metric::PStar => "p_star",
            Metric::RStar => "r_star",
            Metric::EtaOpt => "eta_opt",
            Metric::EtaFixed => "eta_fixed",
            Metric::KappaMin => "kappa_min",
        }
    }

    fn eval(self, exp: &Experiment) -> CliResult<f64> {
        let s = &exp.scenario;
        let (params, tx, cons) = (&s.params, &s.transmission, &s.constraints);
        let opts = exp.options();
        Ok(match self {
            Metric::XiExact => avg_detection_error_quadrature(params, tx.p_a, tx.n, exp.quad),
            Metric::XiApprox => avg_detection_error_approx(params, tx.p_a, tx.n),
            Metric::XiKl => avg_kl_bound(params, tx.p_a, tx.n),
            Metric::XiKlPointwise => avg_kl_bound_pointwise(params, tx.p_a, tx.n, exp.quad),
            Metric::XiSim => {
                let cfg = SimConfig::new(exp.trials, exp.seed, SimMode::DetectionSignalLevel)?;
                simulate_detection_signal_level(params, tx.p_a, tx.n, &cfg).mean
            }
            Metric::Delta => avg_decoding_error(params, tx.p_a, tx.rate, tx.n)?,
            Metric::Eta => effective_throughput(
                tx.n,
                tx.rate,
                avg_decoding_error(params, tx.p_a, tx.rate, tx.n)?,
            ),
            Metric::PStar => solve_covert_power(params, tx.n, cons, &opts)?.power,
            Metric::RStar => solve_inner(params, tx.n, cons, &opts)?.r_star,
            Metric::EtaOpt => solve_inner(params, tx.n, cons, &opts)?.eta,
            Metric::EtaFixed => fixed_rate_point(params, tx.n, tx.rate, cons, &opts)?.eta,
            Metric::KappaMin => reliability_frontier_point(params, tx.n, cons, &opts)?.kappa,
        })
    }
}

impl FromStr for Metric {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                let known: Vec<_> = Metric::ALL.iter().map(|m| m.name()).collect();
                CliError::Usage(format!(
                    "unknown metric `{s}` (expected one of {})",
                    known.join(", ")
                ))
            })
    }
}

/// Parses a comma-separated metric list.
pub fn parse_metrics(list: &str) -> CliResult<Vec<Metric>> {
    let metrics = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(Metric::from_str)
        .collect::<CliResult<Vec<_>>>()?;
    if metrics.is_empty() {
        return Err(CliError::Usage("no metrics selected".into()));
    }
    Ok(metrics)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub var: SweepVar,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub log: bool,
}

impl SweepSpec {
    pub fn validate(&self) -> CliResult<()> {
        if !(self.start < self.stop) {
            return Err(CliError::Usage(format!(
                "sweep start ({}) must be below stop ({})",
                self.start, self.stop
            )));
        }
        if self.points < 2 {
            return Err(CliError::Usage(format!(
                "sweep needs at least 2 points, got {}",
                self.points
            )));
        }
        if self.log && !(self.start > 0.0) {
            return Err(CliError::Usage("log sweep needs a positive start".into()));
        }
        Ok(())
    }

    /// Grid values in order. Blocklength grids are rounded to integers.
    pub fn grid(&self) -> Vec<f64> {
        let k = self.points - 1;
        (0..self.points)
            .map(|i| {
                let f = i as f64 / k as f64;
                let v = if self.log {
                    (self.start.ln() + f * (self.stop.ln() - self.start.ln())).exp()
                } else {
                    self.start + f * (self.stop - self.start)
                };
                let v = if i == k { self.stop } else { v };
                if self.var == SweepVar::Blocklength {
                    v.round()
                } else {
                    v
                }
            })
            .collect()
    }
}

fn with_value(exp: &Experiment, var: SweepVar, v: f64) -> Experiment {
    let mut e = *exp;
    let s = &mut e.scenario;
    match var {
        SweepVar::TransmitPower => s.transmission.p_a = v,
        SweepVar::JammingPower => s.params.p_w = v,
        SweepVar::Blocklength => s.transmission.n = v as u32,
        SweepVar::Epsilon => s.constraints.epsilon = v,
        SweepVar::Kappa => s.constraints.kappa = v,
    }
    e
}

/// Tabulates `metrics` over the sweep grid as CSV, one row per grid point.
pub fn cmd_sweep(exp: &Experiment, spec: &SweepSpec, metrics: &[Metric]) -> CliResult<String> {
    spec.validate()?;
    if metrics.is_empty() {
        return Err(CliError::Usage("no metrics selected".into()));
    }
    let grid = spec.grid();
    let points: Vec<Experiment> = grid.iter().map(|&v| with_value(exp, spec.var, v)).collect();
    for p in &points {
        p.scenario.validate()?;
    }
    let rows = points
        .par_iter()
        .map(|p| {
            metrics
                .iter()
                .map(|m| m.eval(p))
                .collect::<CliResult<Vec<f64>>>()
        })
        .collect::<CliResult<Vec<_>>>()?;

    let mut out = String::new();
    out.push_str(spec.var.name());
    for m in metrics {
        out.push(',');
        out.push_str(m.name());
    }
    out.push('\n');
    for (v, row) in grid.iter().zip(rows) {
        if spec.var == SweepVar::Blocklength {
            write!(out, "{}", *v as u32).unwrap();
        } else {
            write!(out, "{v}").unwrap();
        }
        for x in row {
            write!(out, ",{x}").unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn optimization_result(exp: &Experiment) -> CliResult<OptimizationResult> {
    exp.scenario.validate()?;
    Ok(optimize(
        &exp.scenario.params,
        &exp.scenario.constraints,
        &exp.options(),
    )?)
}

pub fn cmd_optimize(exp: &Experiment) -> CliResult<String> {
    Ok(to_json(&optimization_result(exp)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimulateRecord {
    pub mode: SimMode,
    pub seed: u64,
    pub trials: u64,
    pub mean: f64,
    pub std_err: f64,
    /// Set when a single trial makes the standard error meaningless.
    pub std_err_degenerate: bool,
}

pub fn simulate_record(exp: &Experiment, mode: SimMode) -> CliResult<SimulateRecord> {
    exp.scenario.validate()?;
    let cfg = SimConfig::new(exp.trials, exp.seed, mode)?;
    let est = simulate(&exp.scenario.params, &exp.scenario.transmission, &cfg)?;
    Ok(SimulateRecord {
        mode,
        seed: exp.seed,
        trials: est.trials,
        mean: est.mean,
        std_err: est.std_err,
        std_err_degenerate: est.trials < 2,
    })
}

pub fn cmd_simulate(exp: &Experiment, mode: SimMode) -> CliResult<String> {
    Ok(to_json(&simulate_record(exp, mode)?))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}
