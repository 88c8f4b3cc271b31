//! Problem-instance configuration.

use crate::error::{FEError, Result};

/// Default truncation tolerance for the regularized least-squares solve.
pub const DEFAULT_EPSILON: f64 = 1e-13;

/// One Fourier-extension problem instance: trigonometric series of half-bandwidth
/// `n` on the extended interval [-T, T], fitted to 2M+1 data values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FEConfig {
    /// Extension parameter T > 1; the series is periodic on [-T, T].
    pub t: f64,
    /// Mode half-count: the series has 2N+1 terms, |n| <= N.
    pub n: usize,
    /// Data half-count: pointwise data has 2M+1 samples; N <= M.
    pub m: usize,
    /// Truncation tolerance for the SVD solve, in (0, 1).
    pub epsilon: f64,
}

impl FEConfig {
    /// Builds a configuration with the default tolerance of 1e-13.
    pub fn new(t: f64, n: usize, m: usize) -> Result<Self> {
        Self::with_epsilon(t, n, m, DEFAULT_EPSILON)
    }

    /// Builds a configuration with an explicit truncation tolerance.
    pub fn with_epsilon(t: f64, n: usize, m: usize, epsilon: f64) -> Result<Self> {
        if !t.is_finite() || t <= 1.0 {
            return Err(FEError::Domain(format!(
                "extension parameter T must be > 1 strictly, got {t}"
            )));
        }
        if n > m {
            return Err(FEError::Parameter(format!(
                "mode half-count N = {n} exceeds data half-count M = {m} (need eta = M/N >= 1)"
            )));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(FEError::Parameter(format!(
                "truncation tolerance must lie in (0, 1), got {epsilon}"
            )));
        }
        Ok(Self { t, n, m, epsilon })
    }

    /// Oversampling ratio eta = M/N (infinite when N = 0).
    pub fn eta(&self) -> f64 {
        self.m as f64 / self.n as f64
    }

    /// Number of series coefficients, 2N+1.
    pub fn cols(&self) -> usize {
        2 * self.n + 1
    }

    /// Number of pointwise samples, 2M+1.
    pub fn rows(&self) -> usize {
        2 * self.m + 1
    }
}
