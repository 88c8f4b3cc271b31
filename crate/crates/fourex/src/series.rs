//! Trigonometric series on the extended interval [-T, T] and their evaluation,
//! including an FFT fast path for the structured uniform grid used by the
//! stability diagnostics.

use crate::error::{FEError, Result};
use ndarray::{Array2, ArrayView2};
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

/// A finite Fourier series sum_{|n| <= N} a_n e^{i n pi x / T}, periodic with
/// period 2T. Coefficients are stored in index order n = -N, ..., N.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigSeries {
    /// Extension parameter T > 1.
    pub t: f64,
    /// Coefficients a_{-N} ... a_N; length 2N+1.
    pub coeffs: Vec<Complex64>,
}

impl TrigSeries {
    pub fn new(t: f64, coeffs: Vec<Complex64>) -> Result<Self> {
        if !t.is_finite() || t <= 1.0 {
            return Err(FEError::Domain(format!(
                "series requires extension parameter T > 1, got {t}"
            )));
        }
        if coeffs.is_empty() || coeffs.len() % 2 == 0 {
            return Err(FEError::Shape(format!(
                "coefficient count must be odd (2N+1), got {}",
                coeffs.len()
            )));
        }
        Ok(Self { t, coeffs })
    }

    /// Mode half-count N.
    pub fn order(&self) -> usize {
        (self.coeffs.len() - 1) / 2
    }

    /// Direct summation at a single point.
    pub fn eval(&self, x: f64) -> Complex64 {
        let n = self.order() as i64;
        let base = PI * x / self.t;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &c) in self.coeffs.iter().enumerate() {
            let mode = i as i64 - n;
            acc += c * Complex64::from_polar(1.0, mode as f64 * base);
        }
        acc
    }

    /// Direct summation at each point.
    pub fn eval_points(&self, points: &[f64]) -> Result<Vec<Complex64>> {
        if let Some(bad) = points.iter().find(|p| !p.is_finite()) {
            return Err(FEError::Data(format!(
                "evaluation point must be finite, got {bad}"
            )));
        }
        Ok(points.iter().map(|&x| self.eval(x)).collect())
    }

    /// Evaluation on the structured grid x_k = T(k-1)/K - 1, k = 1..count.
    /// Uses the FFT identity when it applies; agrees with direct summation to
    /// better than 1e-12 relative.
    pub fn eval_grid_form(&self, k: usize, count: usize) -> Result<Vec<Complex64>> {
        let coeffs = ArrayView2::from_shape((self.coeffs.len(), 1), &self.coeffs)
            .expect("column view of coefficient vector");
        let out = eval_columns_on_grid(&coeffs, self.t, k, count)?;
        Ok(out.column(0).to_vec())
    }
}

/// Evaluates many series at once on the grid x_j = T(j-1)/K - 1, j = 1..count.
/// `coeffs` holds one coefficient vector (length 2N+1, order n = -N..N) per
/// column; the result has one grid row per point and one column per series.
///
/// On the grid, phi_n(x_j) = e^{i n pi (j-1)/K} e^{-i n pi / T}, so each column
/// is a length-2K inverse DFT of the rotated coefficients placed at index
/// n mod 2K. Requires 2N+1 <= 2K; otherwise falls back to direct summation.
pub fn eval_columns_on_grid(
    coeffs: &ArrayView2<Complex64>,
    t: f64,
    k: usize,
    count: usize,
) -> Result<Array2<Complex64>> {
    if k == 0 {
        return Err(FEError::Parameter("grid parameter K must be positive".into()));
    }
    let (len, ncols) = (coeffs.nrows(), coeffs.ncols());
    if len % 2 == 0 {
        return Err(FEError::Shape(format!(
            "coefficient rows must be odd (2N+1), got {len}"
        )));
    }
    let n = (len - 1) / 2;
    let l = 2 * k;

    // Per-mode rotation e^{-i n pi / T} carrying the grid offset x_1 = -1.
    let rot: Vec<Complex64> = (0..len)
        .map(|i| Complex64::from_polar(1.0, -((i as f64) - n as f64) * PI / t))
        .collect();

    let mut out = Array2::zeros((count, ncols));

    if len <= l {
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_inverse(l);
        let mut buf = vec![Complex64::new(0.0, 0.0); l];
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        for (j, col) in coeffs.columns().into_iter().enumerate() {
            buf.fill(Complex64::new(0.0, 0.0));
            for (i, &c) in col.iter().enumerate() {
                let mode = i as i64 - n as i64;
                let idx = mode.rem_euclid(l as i64) as usize;
                buf[idx] = c * rot[i];
            }
            fft.process_with_scratch(&mut buf, &mut scratch);
            for (row, &v) in buf.iter().take(count).enumerate() {
                out[(row, j)] = v;
            }
        }
    } else {
        // Grid too coarse for the DFT embedding: evaluate term by term.
        for j in 0..ncols {
            for row in 0..count {
                let x = t * row as f64 / k as f64 - 1.0;
                let base = PI * x / t;
                let mut acc = Complex64::new(0.0, 0.0);
                for (i, &c) in coeffs.column(j).iter().enumerate() {
                    let mode = i as f64 - n as f64;
                    acc += c * Complex64::from_polar(1.0, mode * base);
                }
                out[(row, j)] = acc;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(t: f64, coeffs: &[(f64, f64)]) -> TrigSeries {
        TrigSeries::new(t, coeffs.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
            .unwrap()
    }

    // Deterministic pseudo-random stream for test fixtures.
    fn lcg_stream(seed: u64, len: usize) -> Vec<Complex64> {
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        (0..len).map(|_| Complex64::new(next(), next())).collect()
    }

    #[test]
    fn constant_term_gives_ones() {
        let s = series(2.0, &[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0)]);
        for &x in &[-1.0, -0.3, 0.0, 0.7, 1.0] {
            assert!((s.eval(x) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn one_hot_matches_basis_function() {
        // coeffs = e_n with n = 2 at N = 3.
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 7];
        coeffs[5] = Complex64::new(1.0, 0.0);
        let s = TrigSeries::new(2.5, coeffs).unwrap();
        for &x in &[-0.9, 0.1, 0.33] {
            let expected = Complex64::from_polar(1.0, 2.0 * PI * x / 2.5);
            assert!((s.eval(x) - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn fft_path_matches_direct_sum() {
        let coeffs = lcg_stream(7, 17); // N = 8
        let s = TrigSeries::new(2.0, coeffs).unwrap();
        let k = 64;
        let count = 65; // 2K/T + 1
        let fast = s.eval_grid_form(k, count).unwrap();
        let nodes: Vec<f64> = (0..count).map(|j| 2.0 * j as f64 / k as f64 - 1.0).collect();
        let direct = s.eval_points(&nodes).unwrap();
        let scale: f64 = direct.iter().map(|v| v.norm()).fold(0.0, f64::max);
        for (a, b) in fast.iter().zip(&direct) {
            assert!((a - b).norm() <= 1e-12 * scale.max(1.0));
        }
    }

    #[test]
    fn fft_path_matches_direct_sum_nonbinary_t() {
        let coeffs = lcg_stream(21, 41); // N = 20
        let s = TrigSeries::new(1.125, coeffs).unwrap();
        let k = 128;
        let count = (2.0_f64 * 128.0 / 1.125 + 1.0).floor() as usize;
        let fast = s.eval_grid_form(k, count).unwrap();
        let nodes: Vec<f64> = (0..count)
            .map(|j| 1.125 * j as f64 / k as f64 - 1.0)
            .collect();
        let direct = s.eval_points(&nodes).unwrap();
        let scale: f64 = direct.iter().map(|v| v.norm()).fold(0.0, f64::max);
        for (a, b) in fast.iter().zip(&direct) {
            assert!((a - b).norm() <= 1e-12 * scale.max(1.0));
        }
    }

    #[test]
    fn direct_fallback_when_grid_too_coarse() {
        let coeffs = lcg_stream(3, 33); // N = 16, 2N+1 = 33 > 2K = 8
        let s = TrigSeries::new(2.0, coeffs).unwrap();
        let fast = s.eval_grid_form(4, 5).unwrap();
        let nodes: Vec<f64> = (0..5).map(|j| 2.0 * j as f64 / 4.0 - 1.0).collect();
        let direct = s.eval_points(&nodes).unwrap();
        for (a, b) in fast.iter().zip(&direct) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn periodicity_with_period_two_t() {
        let coeffs = lcg_stream(11, 13);
        let s = TrigSeries::new(1.5, coeffs).unwrap();
        for &x in &[-0.8, 0.05, 0.6, 1.2] {
            let lhs = s.eval(x);
            let rhs = s.eval(x + 2.0 * 1.5);
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_even_coefficient_count_and_bad_points() {
        assert!(TrigSeries::new(2.0, vec![Complex64::new(1.0, 0.0); 4]).is_err());
        let s = series(2.0, &[(1.0, 0.0)]);
        assert!(s.eval_points(&[f64::NAN]).is_err());
    }
}
