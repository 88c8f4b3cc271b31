//! The dense design matrix of scaled basis evaluations and the matching
//! sampling operator.

use crate::config::FEConfig;
use crate::error::{FEError, Result};
use ndarray::Array2;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Which data model the matrix rows represent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataKind {
    /// Rows are scaled point evaluations (1/sqrt(M)) phi_n(x_m) of the
    /// orthonormal basis phi_n(x) = (1/sqrt(2T)) e^{i n pi x / T}.
    Pointwise,
    /// Rows are basis inner products against Fourier modes (l2 data model).
    Fourier,
}

/// Scale factor of the orthonormal basis phi_n on [-T, T].
pub fn basis_scale(t: f64) -> f64 {
    1.0 / (2.0 * t).sqrt()
}

/// Dense complex design matrix A, one row per datum and one column per mode
/// n = -N..N.
#[derive(Debug, Clone)]
pub struct DesignMatrix {
    pub entries: Array2<Complex64>,
    pub config: FEConfig,
    pub data_kind: DataKind,
}

impl DesignMatrix {
    pub fn nrows(&self) -> usize {
        self.entries.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.entries.ncols()
    }
}

/// Checks a pointwise node set against the configuration: sorted, inside
/// [-1,1], and of length 2M+1 (or 2M+2 for the mapped-Chebyshev family, whose
/// defining formula produces an even count).
fn validate_nodes(config: &FEConfig, nodes: &[f64]) -> Result<()> {
    let expected = config.rows();
    if nodes.len() != expected && nodes.len() != expected + 1 {
        return Err(FEError::Shape(format!(
            "node count {} does not match 2M+1 = {expected} (or 2M+2 for mapped nodes)",
            nodes.len()
        )));
    }
    for &x in nodes {
        if !x.is_finite() || !(-1.0..=1.0).contains(&x) {
            return Err(FEError::Domain(format!(
                "sample node {x} lies outside [-1, 1]"
            )));
        }
    }
    if nodes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(FEError::Domain(
            "sample nodes must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Builds the pointwise design matrix with entries
/// (1/sqrt(2TM)) e^{i n pi x_m / T}, i.e. the orthonormal basis sampled under
/// the 1/sqrt(M) weight. All singular values then lie in (0, 1], so the
/// truncation threshold can be applied as an absolute cutoff.
pub fn build_design_matrix(config: &FEConfig, nodes: &[f64]) -> Result<DesignMatrix> {
    validate_nodes(config, nodes)?;
    let scale = basis_scale(config.t) / (config.m as f64).sqrt();
    let half = config.n as f64;
    let mut entries = Array2::zeros((nodes.len(), config.cols()));
    for (row, &x) in nodes.iter().enumerate() {
        let base = PI * x / config.t;
        for col in 0..config.cols() {
            let mode = col as f64 - half;
            entries[(row, col)] = Complex64::from_polar(scale, mode * base);
        }
    }
    Ok(DesignMatrix {
        entries,
        config: *config,
        data_kind: DataKind::Pointwise,
    })
}

/// Applies the sampling operator: b_m = (1/sqrt(M)) f(x_m). The half-count M
/// is inferred from the node count (2M+1, or 2M+2 for mapped nodes) so the
/// scaling always matches the design matrix built on the same nodes.
pub fn sample_function<F>(f: F, nodes: &[f64]) -> Result<Vec<Complex64>>
where
    F: Fn(f64) -> Complex64,
{
    if nodes.is_empty() {
        return Err(FEError::Shape("empty node set".into()));
    }
    let m = if nodes.len() % 2 == 1 {
        (nodes.len() - 1) / 2
    } else {
        nodes.len() / 2 - 1
    };
    if m == 0 {
        return Err(FEError::Shape(format!(
            "node count {} implies M = 0",
            nodes.len()
        )));
    }
    let scale = 1.0 / (m as f64).sqrt();
    let mut out = Vec::with_capacity(nodes.len());
    for &x in nodes {
        if !x.is_finite() || !(-1.0..=1.0).contains(&x) {
            return Err(FEError::Domain(format!(
                "sample node {x} lies outside [-1, 1]"
            )));
        }
        let v = f(x);
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(FEError::Data(format!(
                "function value non-finite at node {x}"
            )));
        }
        out.push(scale * v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TrigSeries;
    use ndarray::Array1;
    use ndarray_linalg::{Eigh, SVD, UPLO};

    fn equispaced(m: usize) -> Vec<f64> {
        (0..=2 * m)
            .map(|i| (i as f64 - m as f64) / m as f64)
            .collect()
    }

    #[test]
    fn zero_modes_gives_constant_column() {
        // scale = 1/sqrt(2*2*4) = 1/4
        let c = FEConfig::new(2.0, 0, 4).unwrap();
        let a = build_design_matrix(&c, &equispaced(4)).unwrap();
        assert_eq!(a.entries.shape(), &[9, 1]);
        for v in a.entries.iter() {
            assert!((v - Complex64::new(0.25, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn tiny_matrix_entries_by_substitution() {
        // T=2, N=1, M=1, nodes {-1, 0, 1}: scale 1/sqrt(2*2*1) = 1/2 times
        // e^{i n pi x / 2}, so the middle row is constant and the edge rows
        // pick up phases -+ pi/2.
        let c = FEConfig::new(2.0, 1, 1).unwrap();
        let a = build_design_matrix(&c, &[-1.0, 0.0, 1.0]).unwrap();
        let i = Complex64::i();
        let one = Complex64::new(1.0, 0.0);
        let expect = [[i, one, -i], [one, one, one], [-i, one, i]];
        for r in 0..3 {
            for cidx in 0..3 {
                assert!(
                    (a.entries[(r, cidx)] - 0.5 * expect[r][cidx]).norm() < 1e-15,
                    "entry ({r},{cidx})"
                );
            }
        }
    }

    #[test]
    fn sigma_min_agrees_with_normal_matrix_eigenvalues() {
        // Independent route: eigenvalues of the 5x5 normal matrix A^H A.
        let c = FEConfig::new(2.0, 2, 4).unwrap();
        let a = build_design_matrix(&c, &equispaced(4)).unwrap();
        let (_, s, _) = a.entries.svd(false, false).unwrap();
        let sigma_min = s.iter().cloned().fold(f64::INFINITY, f64::min);

        let ah = a.entries.t().mapv(|v| v.conj());
        let normal = ah.dot(&a.entries);
        let (eigs, _) = normal.eigh(UPLO::Lower).unwrap();
        let lambda_min = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!((sigma_min - lambda_min.max(0.0).sqrt()).abs() < 1e-10);
    }

    #[test]
    fn singular_values_bounded_by_one_and_a_half() {
        for &(n, m) in &[(50usize, 50usize), (40, 80), (25, 100)] {
            let c = FEConfig::new(2.0, n, m).unwrap();
            let a = build_design_matrix(&c, &equispaced(m)).unwrap();
            let (_, s, _) = a.entries.svd(false, false).unwrap();
            let smax = s.iter().cloned().fold(0.0, f64::max);
            assert!(smax <= 1.5, "sigma_max = {smax} at N={n}, M={m}");
        }
    }

    #[test]
    fn normalization_consistency_with_sampling_operator() {
        // |A c - S_M(f)|_2 must equal (1/sqrt(M)) sqrt(sum |series(x_m) - f(x_m)|^2)
        // where the series carries the raw coefficients c / sqrt(2T).
        let m = 17;
        let c = FEConfig::new(2.0, 6, m).unwrap();
        let nodes = equispaced(m);
        let a = build_design_matrix(&c, &nodes).unwrap();
        let coeffs: Vec<Complex64> = (0..13)
            .map(|i| Complex64::new(0.3 + i as f64 * 0.1, 0.05 * i as f64))
            .collect();
        let raw: Vec<Complex64> = coeffs.iter().map(|v| v * basis_scale(2.0)).collect();
        let series = TrigSeries::new(2.0, raw).unwrap();
        let f = |x: f64| Complex64::new(x.cos(), x.sin() * 0.2);
        let b = sample_function(f, &nodes).unwrap();

        let cv = Array1::from(coeffs);
        let ac = a.entries.dot(&cv);
        let lhs: f64 = ac
            .iter()
            .zip(&b)
            .map(|(p, q)| (p - q).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let rhs: f64 = (nodes
            .iter()
            .map(|&x| (series.eval(x) - f(x)).norm_sqr())
            .sum::<f64>()
            / m as f64)
            .sqrt();
        assert!((lhs - rhs).abs() < 1e-12 * rhs.max(1.0));
    }

    #[test]
    fn sampling_operator_values() {
        // f = x at M=2: (1/sqrt(2)) (-1, -1/2, 0, 1/2, 1).
        let nodes = equispaced(2);
        let b = sample_function(|x| Complex64::new(x, 0.0), &nodes).unwrap();
        let s = 1.0 / 2f64.sqrt();
        let expect = [-s, -s / 2.0, 0.0, s / 2.0, s];
        for (v, e) in b.iter().zip(expect) {
            assert!((v.re - e).abs() < 1e-15 && v.im == 0.0);
        }
        // Constant f at M=1 keeps its values (sqrt(1) = 1).
        let ones = sample_function(|_| Complex64::new(1.0, 0.0), &equispaced(1)).unwrap();
        assert!(ones.iter().all(|v| (v - Complex64::new(1.0, 0.0)).norm() < 1e-15));
        // Endpoint value of 1/(60 - 59x).
        let b5 = sample_function(
            |x| Complex64::new(1.0 / (60.0 - 59.0 * x), 0.0),
            &equispaced(4),
        )
        .unwrap();
        assert!((b5[8].re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_nodes() {
        let c = FEConfig::new(2.0, 1, 2).unwrap();
        assert!(build_design_matrix(&c, &[-1.0, 0.0, 1.0]).is_err()); // wrong count
        assert!(build_design_matrix(&c, &[-1.1, -0.5, 0.0, 0.5, 1.0]).is_err());
        assert!(build_design_matrix(&c, &[-1.0, -0.5, -0.5, 0.5, 1.0]).is_err());
        assert!(sample_function(|x| Complex64::new(1.0 / x, 0.0), &equispaced(2)).is_err());
    }

    #[test]
    fn accepts_even_node_count_for_mapped_family() {
        let c = FEConfig::new(2.0, 1, 1).unwrap();
        let a = build_design_matrix(&c, &[-0.8, -0.2, 0.2, 0.8]).unwrap();
        assert_eq!(a.nrows(), 4);
        let b = sample_function(|_| Complex64::new(1.0, 0.0), &[-0.8, -0.2, 0.2, 0.8]).unwrap();
        assert!((b[0].re - 1.0).abs() < 1e-15); // M = 4/2 - 1 = 1
    }
}
