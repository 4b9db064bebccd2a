//! Scenario parameters, Alice's transmission controls, problem constraints,
//! and Rayleigh block-fading channel draws.
//!
//! Channels are carried as squared magnitudes `|h|^2`; every analytic
//! expression in the crate depends on them alone. The signal-level simulator
//! draws its own complex noise samples.
//!
//! Random streams come from ChaCha8 (`rand_chacha`): the seed fixes the key
//! and each trial index selects an independent 64-bit stream, so trial `i`
//! produces the same numbers no matter which thread runs it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Static scenario: fading means, noise floors, jamming.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// Mean of `|h_ab|^2` (Alice to Bob).
    pub lambda_ab: f64,
    /// Mean of `|h_aw|^2` (Alice to Willie).
    pub lambda_aw: f64,
    /// Mean of `|h_wb|^2` (Willie to Bob, the jamming link).
    pub lambda_wb: f64,
    /// Noise variance at Bob, watts.
    pub sigma_b2: f64,
    /// Noise variance at Willie, watts.
    pub sigma_w2: f64,
    /// Residual self-interference fraction at Willie, in `[0, 1]`.
    pub phi: f64,
    /// Willie's jamming power, watts. Zero is a passive warder.
    #[serde(rename = "P_w")]
    pub p_w: f64,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self {
            lambda_ab: 5e-2,
            lambda_aw: 1e-3,
            lambda_wb: 1e-3,
            sigma_b2: 0.1,
            sigma_w2: 0.1,
            phi: 1e-4,
            p_w: 100.0,
        }
    }
}

impl SystemParams {
    /// Same scenario with a different jamming power.
    pub fn with_jamming(self, p_w: f64) -> Self {
        Self { p_w, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        positive("lambda_ab", self.lambda_ab)?;
        positive("lambda_aw", self.lambda_aw)?;
        positive("lambda_wb", self.lambda_wb)?;
        positive("sigma_b2", self.sigma_b2)?;
        positive("sigma_w2", self.sigma_w2)?;
        if !(0.0..=1.0).contains(&self.phi) {
            return Err(Error::field(
                "phi",
                format!("must lie in [0, 1], got {}", self.phi),
            ));
        }
        nonnegative("P_w", self.p_w)
    }
}

/// Total noise seen by Willie's radiometer: residual self-interference plus
/// thermal noise, `phi * P_w + sigma_w2`.
pub fn willie_noise_floor(params: &SystemParams) -> f64 {
    params.phi * params.p_w + params.sigma_w2
}

/// Alice's controllables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransmissionConfig {
    /// Transmit power, watts.
    #[serde(rename = "P_a")]
    pub p_a: f64,
    /// Rate in bits per channel use.
    #[serde(rename = "R")]
    pub rate: f64,
    /// Blocklength in channel uses.
    pub n: u32,
}

impl Default for TransmissionConfig {
    fn default() -> Self {
        Self {
            p_a: 1.0,
            rate: 1.0,
            n: 100,
        }
    }
}

impl TransmissionConfig {
    pub fn validate(&self) -> Result<()> {
        nonnegative("P_a", self.p_a)?;
        positive("R", self.rate)?;
        if self.n < 2 {
            return Err(Error::field(
                "n",
                format!("blocklength must be at least 2, got {}", self.n),
            ));
        }
        Ok(())
    }
}

/// Covertness, reliability, power and blocklength requirements.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constraints {
    /// Covertness slack: average detection error must stay at or above `1 - epsilon`.
    pub epsilon: f64,
    /// Cap on average decoding error.
    pub kappa: f64,
    #[serde(rename = "P_a_max")]
    pub p_a_max: f64,
    pub n_min: u32,
    pub n_max: u32,
}

impl Default for Constraints {
    fn default() -> Self {
        Self {
            epsilon: 0.1,
            kappa: 0.1,
            p_a_max: 5.0,
            n_min: 50,
            n_max: 200,
        }
    }
}

impl Constraints {
    pub fn validate(&self) -> Result<()> {
        open_unit("epsilon", self.epsilon)?;
        open_unit("kappa", self.kappa)?;
        positive("P_a_max", self.p_a_max)?;
        if self.n_min < 2 {
            return Err(Error::field(
                "n_min",
                format!("must be at least 2, got {}", self.n_min),
            ));
        }
        if self.n_max < self.n_min {
            return Err(Error::field(
                "n_max",
                format!(
                    "must be at least n_min = {}, got {}",
                    self.n_min, self.n_max
                ),
            ));
        }
        Ok(())
    }
}

/// One draw of the three squared channel gains.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelRealization {
    pub g_ab: f64,
    pub g_aw: f64,
    pub g_wb: f64,
}

impl ChannelRealization {
    /// Draws `(g_ab, g_aw, g_wb)` in that order, each exponential with its mean.
    pub fn sample<R: Rng + ?Sized>(params: &SystemParams, rng: &mut R) -> Self {
        let g_ab = params.lambda_ab * rng.sample::<f64, _>(Exp1);
        let g_aw = params.lambda_aw * rng.sample::<f64, _>(Exp1);
        let g_wb = params.lambda_wb * rng.sample::<f64, _>(Exp1);
        Self { g_ab, g_aw, g_wb }
    }

    /// Bob's SINR `P_a g_ab / (P_w g_wb + sigma_b2)` for this realization.
    pub fn sinr_at_bob(&self, params: &SystemParams, p_a: f64) -> f64 {
        p_a * self.g_ab / (params.p_w * self.g_wb + params.sigma_b2)
    }
}

/// Generator for trial `index` under `seed`: key from the seed, stream from the index.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `count` i.i.d. channel realizations; realization `i` comes from `trial_rng(seed, i)`.
pub fn sample_channels(params: &SystemParams, seed: u64, count: usize) -> Vec<ChannelRealization> {
    (0..count as u64)
        .map(|i| ChannelRealization::sample(params, &mut trial_rng(seed, i)))
        .collect()
}

/// Everything a scenario file can carry. Missing fields take the defaults
/// of the reference operating point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Scenario {
    pub params: SystemParams,
    pub transmission: TransmissionConfig,
    pub constraints: Constraints,
}

// Flat on-disk layout; field names are the public file schema.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
struct ScenarioFile {
    lambda_ab: Option<f64>,
    lambda_aw: Option<f64>,
    lambda_wb: Option<f64>,
    sigma_b2: Option<f64>,
    sigma_w2: Option<f64>,
    phi: Option<f64>,
    P_w: Option<f64>,
    P_a: Option<f64>,
    R: Option<f64>,
    n: Option<u32>,
    epsilon: Option<f64>,
    kappa: Option<f64>,
    P_a_max: Option<f64>,
    n_min: Option<u32>,
    n_max: Option<u32>,
}

impl Scenario {
    /// Parses and validates a flat JSON scenario. Errors name the offending field.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: ScenarioFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            let msg = inner.to_string();
            // unknown-field errors report the parent path; pull the name out of the message
            let field = if msg.starts_with("unknown field") {
                msg.split('`').nth(1).unwrap_or(&path).to_string()
            } else {
                path
            };
            Error::field(field, msg)
        })?;
        let d = Scenario::default();
        let scenario = Scenario {
            params: SystemParams {
                lambda_ab: file.lambda_ab.unwrap_or(d.params.lambda_ab),
                lambda_aw: file.lambda_aw.unwrap_or(d.params.lambda_aw),
                lambda_wb: file.lambda_wb.unwrap_or(d.params.lambda_wb),
                sigma_b2: file.sigma_b2.unwrap_or(d.params.sigma_b2),
                sigma_w2: file.sigma_w2.unwrap_or(d.params.sigma_w2),
                phi: file.phi.unwrap_or(d.params.phi),
                p_w: file.P_w.unwrap_or(d.params.p_w),
            },
            transmission: TransmissionConfig {
                p_a: file.P_a.unwrap_or(d.transmission.p_a),
                rate: file.R.unwrap_or(d.transmission.rate),
                n: file.n.unwrap_or(d.transmission.n),
            },
            constraints: Constraints {
                epsilon: file.epsilon.unwrap_or(d.constraints.epsilon),
                kappa: file.kappa.unwrap_or(d.constraints.kappa),
                p_a_max: file.P_a_max.unwrap_or(d.constraints.p_a_max),
                n_min: file.n_min.unwrap_or(d.constraints.n_min),
                n_max: file.n_max.unwrap_or(d.constraints.n_max),
            },
        };
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.transmission.validate()?;
        self.constraints.validate()
    }

    /// Flat JSON with every field present.
    pub fn to_json_string(&self) -> String {
        let file = ScenarioFile {
            lambda_ab: Some(self.params.lambda_ab),
            lambda_aw: Some(self.params.lambda_aw),
            lambda_wb: Some(self.params.lambda_wb),
            sigma_b2: Some(self.params.sigma_b2),
            sigma_w2: Some(self.params.sigma_w2),
            phi: Some(self.params.phi),
            P_w: Some(self.params.p_w),
            P_a: Some(self.transmission.p_a),
            R: Some(self.transmission.rate),
            n: Some(self.transmission.n),
            epsilon: Some(self.constraints.epsilon),
            kappa: Some(self.constraints.kappa),
            P_a_max: Some(self.constraints.p_a_max),
            n_min: Some(self.constraints.n_min),
            n_max: Some(self.constraints.n_max),
        };
        serde_json::to_string_pretty(&file).expect("scenario serializes")
    }
}

fn positive(field: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::field(
            field,
            format!("must be positive and finite, got {v}"),
        ))
    }
}

fn nonnegative(field: &str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::field(
            field,
            format!("must be nonnegative and finite, got {v}"),
        ))
    }
}

fn open_unit(field: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::field(field, format!("must lie in (0, 1), got {v}")))
    }
}
