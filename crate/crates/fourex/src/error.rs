//! Error type shared by every module in the crate.

use thiserror::Error;

/// Errors produced by construction, sampling, solving and study operations.
#[derive(Debug, Error)]
pub enum FEError {
    /// An argument lies outside its mathematical domain (node outside [-1,1], T <= 1, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Array dimensions do not match the problem sizes.
    #[error("shape error: {0}")]
    Shape(String),

    /// A parameter combination is invalid (quadrature panels, jitter amplitude, ...).
    #[error("parameter error: {0}")]
    Parameter(String),

    /// Sampled data is unusable (non-finite function value, ...).
    #[error("data error: {0}")]
    Data(String),

    /// A dense factorization failed or produced non-finite output.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// Inconsistent configuration (unknown solver id, grid/config mismatch, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// Too few points for a requested fit.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// No sample budget within the allowed range reached the accuracy target.
    #[error("not resolved: best sup error {best_error:.3e} at M = {best_m}")]
    NotResolved { best_error: f64, best_m: usize },

    /// The instance admits no meaningful answer (kappa = 0, empty spectrum, ...).
    #[error("degenerate instance: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, FEError>;
