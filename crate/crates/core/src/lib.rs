//! Covert short-packet communication against a warder that both detects and
//! jams: detection-error analysis, average decoding error under fading,
//! effective-throughput optimization, and Monte Carlo validation.
//!
//! The analytic entry points live in [`covertness`] and [`reliability`], the
//! joint design in [`optimizer`], and seeded simulation in [`simulator`].

// `!(x >= 0.0)` style guards are how NaN inputs get rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod covertness;
pub mod error;
pub mod model;
pub mod optimizer;
pub mod quadrature;
pub mod reliability;
pub mod simulator;
pub mod specfun;

pub use covertness::{
    avg_detection_error_approx, avg_detection_error_quadrature, avg_kl_bound, covertness_report,
    min_detection_error, CovertnessMetric, CovertnessReport,
};
pub use error::{Error, Result};
pub use model::{Constraints, Scenario, SystemParams, TransmissionConfig};
pub use optimizer::{optimize, solve_inner, OptimizationResult, OptimizerOptions};
pub use quadrature::QuadratureConfig;
pub use reliability::{avg_decoding_error, decoding_error_prob};
pub use simulator::{simulate, SimConfig, SimEstimate, SimMode};
