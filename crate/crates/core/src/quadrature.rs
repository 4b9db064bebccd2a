//! Gauss–Chebyshev evaluation of fading averages.
//!
//! Averages over an exponentially distributed gain are written as
//! `∫_0^∞ f(u) e^{-u} du` in the gain normalized by its mean, mapped to
//! `θ ∈ (0, π/2)` with `u = tan θ`, and evaluated with `B` Chebyshev nodes
//! of the first kind:
//!
//! ```text
//! θ_i = (π/4)(1 + cos((2i-1)π / 2B)),   i = 1..B
//! ∫ ≈ (π/B) Σ f(tan θ_i) e^{-tan θ_i} sqrt(θ_i (π/2 - θ_i)) / cos²θ_i
//! ```
//!
//! Normalizing by the mean before substituting keeps the integrand spread
//! across the whole `θ` range whatever the fading scale.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of Gauss–Chebyshev nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub nodes: usize,
}

impl QuadratureConfig {
    pub const MIN_NODES: usize = 10;

    pub fn new(nodes: usize) -> Result<Self> {
        if nodes < Self::MIN_NODES {
            return Err(Error::field(
                "nodes",
                format!(
                    "need at least {} quadrature nodes, got {nodes}",
                    Self::MIN_NODES
                ),
            ));
        }
        Ok(Self { nodes })
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { nodes: 100 }
    }
}

/// `E[f(U)]` for `U ~ Exponential(1)`.
pub fn exponential_average(quad: QuadratureConfig, f: impl Fn(f64) -> f64) -> f64 {
    let b = quad.nodes;
    let scale = PI / b as f64;
    let mut sum = 0.0;
    for i in 1..=b {
        let theta = FRAC_PI_4 * (1.0 + ((2 * i - 1) as f64 * PI / (2 * b) as f64).cos());
        let u = theta.tan();
        let decay = (-u).exp();
        if decay == 0.0 {
            continue;
        }
        let cos = theta.cos();
        let weight = (theta * (FRAC_PI_2 - theta)).sqrt() / (cos * cos);
        sum += f(u) * decay * weight;
    }
    scale * sum
}
