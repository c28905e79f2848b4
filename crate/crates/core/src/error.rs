use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An index exceeded the precomputed table size.
    #[error("index {index} exceeds capacity {capacity}")]
    Capacity { index: usize, capacity: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    /// Adaptive quadrature ran out of subdivisions.
    #[error("quadrature did not converge after {intervals} intervals (estimated error {estimate:e}, target {target:e})")]
    Quadrature {
        estimate: f64,
        target: f64,
        intervals: usize,
    },

    #[error("squeeze magnitude r1 = {r1:e} is below the guard {min:e}; use the unsqueezed generator instead")]
    DegenerateSqueeze { r1: f64, min: f64 },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("numerical error: {0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
