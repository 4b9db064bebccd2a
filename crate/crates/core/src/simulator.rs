//! Monte Carlo estimators used to validate the closed forms.
//!
//! Trial `i` draws everything it needs from `trial_rng(seed, i)`: first the
//! channel triple `(g_ab, g_aw, g_wb)`, then any noise samples. Per-trial
//! values are gathered in index order and reduced with compensated
//! summation, so results do not depend on thread scheduling.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::covertness::{min_detection_error, optimal_threshold};
use crate::error::{Error, Result};
use crate::model::{
    trial_rng, willie_noise_floor, ChannelRealization, SystemParams, TransmissionConfig,
};
use crate::reliability::{decoding_error_prob, R_MIN};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimMode {
    /// Radiometer on raw complex Gaussian samples, both hypotheses.
    DetectionSignalLevel,
    /// Per-round detection error formula averaged over sampled channels.
    DetectionAnalyticAvg,
    /// Normal-approximation decoding error averaged over sampled channels.
    DecodingAvg,
}

impl SimMode {
    pub const ALL: [SimMode; 3] = [
        SimMode::DetectionSignalLevel,
        SimMode::DetectionAnalyticAvg,
        SimMode::DecodingAvg,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SimMode::DetectionSignalLevel => "detection_signal_level",
            SimMode::DetectionAnalyticAvg => "detection_analytic_avg",
            SimMode::DecodingAvg => "decoding_avg",
        }
    }
}

impl fmt::Display for SimMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SimMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SimMode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::field("mode", format!("unknown simulation mode `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimConfig {
    pub trials: u64,
    pub seed: u64,
    pub mode: SimMode,
}

impl SimConfig {
    pub fn new(trials: u64, seed: u64, mode: SimMode) -> Result<Self> {
        if trials == 0 {
            return Err(Error::field("trials", "need at least one trial"));
        }
        Ok(Self { trials, seed, mode })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimEstimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(trials)`; zero for a single trial.
    pub std_err: f64,
    pub trials: u64,
}

/// Runs `trial` for every index and reduces the outcomes.
fn estimate(cfg: &SimConfig, trial: impl Fn(u64) -> f64 + Sync) -> SimEstimate {
    let values: Vec<f64> = (0..cfg.trials).into_par_iter().map(&trial).collect();
    summarize(&values)
}

fn summarize(values: &[f64]) -> SimEstimate {
    let count = values.len();
    let mean = neumaier_sum(values.iter().copied()) / count as f64;
    let std_err = if count > 1 {
        let ss = neumaier_sum(values.iter().map(|v| (v - mean) * (v - mean)));
        (ss / (count - 1) as f64).sqrt() / (count as f64).sqrt()
    } else {
        0.0
    };
    SimEstimate {
        mean,
        std_err,
        trials: count as u64,
    }
}

fn neumaier_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Radiometer statistic `(1/n) Σ |y_i|^2` over `n` samples of `CN(0, variance)`.
fn radiometer_statistic<R: Rng + ?Sized>(rng: &mut R, variance: f64, n: u32) -> f64 {
    let component_sd = (0.5 * variance).sqrt();
    let mut energy = 0.0;
    for _ in 0..n {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        energy += re * re + im * im;
    }
    component_sd * component_sd * energy / n as f64
}

/// Signal-level estimate of the fading-averaged detection error at the
/// per-round optimal threshold. Each trial contributes its false-alarm
/// indicator plus its missed-detection indicator.
pub fn simulate_detection_signal_level(
    params: &SystemParams,
    p_a: f64,
    n: u32,
    cfg: &SimConfig,
) -> SimEstimate {
    let sigma2 = willie_noise_floor(params);
    estimate(cfg, |i| {
        let mut rng = trial_rng(cfg.seed, i);
        let ch = ChannelRealization::sample(params, &mut rng);
        let tau = optimal_threshold(params, p_a, ch.g_aw);
        let idle = radiometer_statistic(&mut rng, sigma2, n);
        let active = radiometer_statistic(&mut rng, sigma2 + p_a * ch.g_aw, n);
        let false_alarm = (idle > tau) as u8;
        let missed = (active < tau) as u8;
        (false_alarm + missed) as f64
    })
}

/// Average of the per-round minimum detection error over sampled `g_aw`.
pub fn simulate_detection_analytic_avg(
    params: &SystemParams,
    p_a: f64,
    n: u32,
    cfg: &SimConfig,
) -> SimEstimate {
    estimate(cfg, |i| {
        let ch = ChannelRealization::sample(params, &mut trial_rng(cfg.seed, i));
        min_detection_error(params, p_a, ch.g_aw, n)
    })
}

/// Average of the exact normal-approximation decoding error over sampled
/// `(g_ab, g_wb)`.
pub fn simulate_avg_decoding_error(
    params: &SystemParams,
    p_a: f64,
    rate: f64,
    n: u32,
    cfg: &SimConfig,
) -> Result<SimEstimate> {
    if !(rate >= R_MIN) {
        return Err(Error::domain(
            "simulate_avg_decoding_error",
            format!("rate must be at least {R_MIN} bpcu, got {rate}"),
        ));
    }
    Ok(estimate(cfg, |i| {
        let ch = ChannelRealization::sample(params, &mut trial_rng(cfg.seed, i));
        decoding_error_prob(ch.sinr_at_bob(params, p_a), rate, n)
    }))
}

/// Dispatches on `cfg.mode`.
pub fn simulate(
    params: &SystemParams,
    tx: &TransmissionConfig,
    cfg: &SimConfig,
) -> Result<SimEstimate> {
    match cfg.mode {
        SimMode::DetectionSignalLevel => {
            Ok(simulate_detection_signal_level(params, tx.p_a, tx.n, cfg))
        }
        SimMode::DetectionAnalyticAvg => {
            Ok(simulate_detection_analytic_avg(params, tx.p_a, tx.n, cfg))
        }
        SimMode::DecodingAvg => simulate_avg_decoding_error(params, tx.p_a, tx.rate, tx.n, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mode_names_round_trip() {
        for m in SimMode::ALL {
            assert_eq!(m.as_str().parse::<SimMode>().unwrap(), m);
        }
        assert!("detection".parse::<SimMode>().is_err());
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(SimConfig::new(0, 1, SimMode::DecodingAvg).is_err());
    }

    #[test]
    fn single_trial_has_zero_std_err() {
        let est = summarize(&[0.3]);
        assert_eq!(est.std_err, 0.0);
        assert_eq!(est.mean, 0.3);
    }

    #[test]
    fn summary_of_known_values() {
        let est = summarize(&[0.0, 1.0, 2.0, 1.0]);
        assert_eq!(est.mean, 1.0);
        let sd = (2.0f64 / 3.0).sqrt();
        assert!((est.std_err - sd / 2.0).abs() < 1e-15);
    }

    #[test]
    fn no_transmission_never_detected() {
        let p = SystemParams::default();
        let cfg = SimConfig::new(20_000, 3, SimMode::DetectionSignalLevel).unwrap();
        let est = simulate_detection_signal_level(&p, 0.0, 100, &cfg);
        assert!(
            (est.mean - 1.0).abs() <= 3.0 * est.std_err + 1e-12,
            "{est:?}"
        );
    }

    #[test]
    fn strong_signal_decodes() {
        let p = SystemParams::default();
        let cfg = SimConfig::new(20_000, 3, SimMode::DecodingAvg).unwrap();
        let est = simulate_avg_decoding_error(&p, 1e6, 1.0, 100, &cfg).unwrap();
        assert!(est.mean < 1e-3, "{est:?}");
    }

    #[test]
    fn fixed_seed_is_bitwise_reproducible() {
        let p = SystemParams::default();
        let cfg = SimConfig::new(2_000, 11, SimMode::DetectionSignalLevel).unwrap();
        let a = simulate_detection_signal_level(&p, 1.0, 100, &cfg);
        let b = simulate_detection_signal_level(&p, 1.0, 100, &cfg);
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.std_err.to_bits(), b.std_err.to_bits());
    }
}
