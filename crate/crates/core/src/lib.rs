//! Simulation and diagnostics for outliers and heavy tails.
//!
//! * [`dist`]: catalogue of laws with samplers and tail functions.
//! * [`diagnostics`]: order-statistic gaps and the standardized outlier rate.
//! * [`put_tail_down`]: mixing a symmetric law with an atom at the origin.
//! * [`limit_models`]: LePage series, geometric random products and minima,
//!   and the Hill / mean-log estimators.
//! * [`tail_bounds`]: cure decomposition, IFRA and φ-IFRA tail bounds.
//! * [`app`]: the reproducible experiment driver behind the `heavytail` binary.
//!
//! All randomness flows from a `u64` seed through counter-based sub-streams,
//! so every result is reproducible bit for bit.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod app;
pub mod diagnostics;
pub mod dist;
pub mod error;
pub mod limit_models;
pub mod put_tail_down;
pub mod rng;
pub mod stats;
pub mod tail_bounds;

pub use dist::{DistributionSpec, SampleBatch};
pub use error::{Error, Result};
