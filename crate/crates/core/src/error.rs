use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by samplers, diagnostics, bounds and the experiment driver.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    ParameterDomain(String),

    #[error("value {value} at index {index} is outside the domain: {reason}")]
    ValueDomain {
        index: usize,
        value: f64,
        reason: &'static str,
    },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("unsupported specification: {0}")]
    Unsupported(String),

    #[error("ordering violated: {0}")]
    Ordering(String),

    #[error("series diverges: {0}")]
    Divergence(String),

    #[error("invalid cure probability {cure}: must lie strictly below every survival value (min {min})")]
    InvalidCure { cure: f64, min: f64 },

    #[error("grid too coarse: {0}")]
    Resolution(String),

    #[error("insufficient data: need at least {needed} admissible values, found {found}")]
    InsufficientData { needed: usize, found: usize },

    #[error("{path}:{line}: {message}")]
    Parse { path: PathBuf, line: u64, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::ParameterDomain(msg.into())
}
