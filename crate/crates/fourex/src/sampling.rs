//! Generators for the five data models: equispaced, jittered, logarithmic,
//! and mapped-Chebyshev nodes, plus Fourier-coefficient data.

use crate::config::FEConfig;
use crate::design::{DataKind, DesignMatrix};
use crate::error::{FEError, Result};
use crate::mapping::ExtensionMap;
use ndarray::Array2;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::sync::OnceLock;

/// Which data model a sample set was generated from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleKind {
    Equispaced,
    Jittered,
    Logarithmic,
    MappedChebyshev,
    Fourier,
}

impl SampleKind {
    pub fn name(&self) -> &'static str {
        match self {
            SampleKind::Equispaced => "equispaced",
            SampleKind::Jittered => "jittered",
            SampleKind::Logarithmic => "logarithmic",
            SampleKind::MappedChebyshev => "mapped-cheb",
            SampleKind::Fourier => "fourier",
        }
    }
}

/// Norm in which diagnostics for this data model are measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    Uniform,
    L2,
}

impl NormKind {
    pub fn name(&self) -> &'static str {
        match self {
            NormKind::Uniform => "uniform",
            NormKind::L2 => "l2",
        }
    }
}

/// Kind-specific generator parameters, recorded for serialization and replay.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SampleParams {
    /// Jitter amplitude delta ∈ (0,1) (jittered kind).
    pub delta_jit: Option<f64>,
    /// Logarithmic density c > 0 (logarithmic kind).
    pub log_c: Option<f64>,
    /// Extension parameter of the node mapping (mapped-Chebyshev kind).
    pub t: Option<f64>,
}

/// A generated data set: node positions for the pointwise kinds, or mode
/// indices -M..M for the Fourier kind.
#[derive(Debug, Clone)]
pub struct SampleSet {
    pub kind: SampleKind,
    pub m: usize,
    pub nodes: Vec<f64>,
    pub params: SampleParams,
    pub norm: NormKind,
}

impl SampleSet {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Builds the design matrix for this data set: sampled basis rows for the
    /// pointwise kinds, analytic inner products for the Fourier kind.
    pub fn design_matrix(&self, config: &FEConfig) -> Result<DesignMatrix> {
        if config.m != self.m {
            return Err(FEError::Shape(format!(
                "config M = {} does not match sample set M = {}",
                config.m, self.m
            )));
        }
        match self.kind {
            SampleKind::Fourier => build_fourier_design_matrix(config),
            _ => crate::design::build_design_matrix(config, &self.nodes),
        }
    }

    /// One row per node (or mode index), headed by the kind and parameters.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "# kind={} M={}", self.kind.name(), self.m);
        if let Some(d) = self.params.delta_jit {
            let _ = write!(out, " delta_jit={d:.16e}");
        }
        if let Some(c) = self.params.log_c {
            let _ = write!(out, " log_c={c:.16e}");
        }
        if let Some(t) = self.params.t {
            let _ = write!(out, " T={t:.16e}");
        }
        out.push('\n');
        out.push_str(if self.kind == SampleKind::Fourier {
            "mode\n"
        } else {
            "node\n"
        });
        for &x in &self.nodes {
            if self.kind == SampleKind::Fourier {
                let _ = writeln!(out, "{}", x as i64);
            } else {
                let _ = writeln!(out, "{x:.16e}");
            }
        }
        out
    }
}

fn check_generated(kind: SampleKind, nodes: &[f64]) -> Result<()> {
    for &x in nodes {
        if !(-1.0..=1.0).contains(&x) {
            return Err(FEError::Data(format!(
                "{} node {x} falls outside [-1, 1]; reduce the amplitude parameter",
                kind.name()
            )));
        }
    }
    if nodes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(FEError::Data(format!(
            "{} nodes are not strictly increasing",
            kind.name()
        )));
    }
    Ok(())
}

/// Nodes m/M for m = -M..M.
pub fn equispaced_nodes(m: usize) -> Result<SampleSet> {
    if m == 0 {
        return Err(FEError::Parameter("M must be at least 1".into()));
    }
    let nodes = (0..=2 * m)
        .map(|i| (i as f64 - m as f64) / m as f64)
        .collect();
    Ok(SampleSet {
        kind: SampleKind::Equispaced,
        m,
        nodes,
        params: SampleParams::default(),
        norm: NormKind::Uniform,
    })
}

/// Deterministically jittered nodes x_m = m/M + (delta/M) sin(M^2/m), with
/// the origin left in place. Nodes pushed outside [-1,1] are an error, not
/// clamped: the sign of sin(M) decides whether the endpoints survive, and no
/// choice of delta can fix a positive sin(M).
pub fn jittered_nodes(m: usize, delta: f64) -> Result<SampleSet> {
    if m == 0 {
        return Err(FEError::Parameter("M must be at least 1".into()));
    }
    if !delta.is_finite() || delta <= 0.0 || delta >= 1.0 {
        return Err(FEError::Parameter(format!(
            "jitter amplitude must lie in (0,1), got {delta}"
        )));
    }
    let mf = m as f64;
    let nodes: Vec<f64> = (-(m as i64)..=m as i64)
        .map(|i| {
            if i == 0 {
                0.0
            } else {
                let base = i as f64 / mf;
                base + (delta / mf) * (mf * mf / i as f64).sin()
            }
        })
        .collect();
    check_generated(SampleKind::Jittered, &nodes)?;
    Ok(SampleSet {
        kind: SampleKind::Jittered,
        m,
        nodes,
        params: SampleParams {
            delta_jit: Some(delta),
            ..Default::default()
        },
        norm: NormKind::Uniform,
    })
}

/// Logarithmically clustered nodes: x_0 = 0, and for m = 1..M,
/// x_m = 10^{((m-1)/(M-1) - 1) log10(cM)} mirrored to negative indices.
pub fn log_nodes(m: usize, c: f64) -> Result<SampleSet> {
    if m < 2 {
        return Err(FEError::Parameter("M must be at least 2".into()));
    }
    if !c.is_finite() || c <= 0.0 {
        return Err(FEError::Parameter(format!(
            "log density must be positive, got {c}"
        )));
    }
    let cm = c * m as f64;
    if cm <= 1.0 {
        return Err(FEError::Parameter(format!(
            "cM = {cm} must exceed 1 for a decreasing node scale"
        )));
    }
    let span = cm.log10();
    let mut nodes = Vec::with_capacity(2 * m + 1);
    let positive: Vec<f64> = (1..=m)
        .map(|i| 10f64.powf(((i - 1) as f64 / (m - 1) as f64 - 1.0) * span))
        .collect();
    nodes.extend(positive.iter().rev().map(|x| -x));
    nodes.push(0.0);
    nodes.extend(&positive);
    check_generated(SampleKind::Logarithmic, &nodes)?;
    Ok(SampleSet {
        kind: SampleKind::Logarithmic,
        m,
        nodes,
        params: SampleParams {
            log_c: Some(c),
            ..Default::default()
        },
        norm: NormKind::Uniform,
    })
}

/// Chebyshev points of [-1,1] pulled back through the inverse extension map:
/// x_m = map_inverse(cos((2m+1) pi / (2M+2))) for m = 0..M, mirrored. The
/// count is 2M+2 (even) and no node sits at the origin or the endpoints.
pub fn mapped_chebyshev_nodes(m: usize, t: f64) -> Result<SampleSet> {
    let map = ExtensionMap::new(t)?;
    let count = 2 * m + 2;
    let positive: Vec<f64> = (0..=m)
        .map(|i| {
            let z = ((2 * i + 1) as f64 * PI / count as f64).cos();
            map.inverse(z)
        })
        .collect::<Result<_>>()?;
    let mut nodes = Vec::with_capacity(count);
    nodes.extend(positive.iter().rev().map(|x| -x));
    nodes.extend(&positive);
    check_generated(SampleKind::MappedChebyshev, &nodes)?;
    Ok(SampleSet {
        kind: SampleKind::MappedChebyshev,
        m,
        nodes,
        params: SampleParams {
            t: Some(t),
            ..Default::default()
        },
        norm: NormKind::Uniform,
    })
}

/// Mode indices -M..M for the Fourier-coefficient data model.
pub fn fourier_modes(m: usize) -> Result<SampleSet> {
    if m == 0 {
        return Err(FEError::Parameter("M must be at least 1".into()));
    }
    let nodes = (-(m as i64)..=m as i64).map(|i| i as f64).collect();
    Ok(SampleSet {
        kind: SampleKind::Fourier,
        m,
        nodes,
        params: SampleParams::default(),
        norm: NormKind::L2,
    })
}

/// 16-point Gauss-Legendre rule on [-1,1], nodes ascending.
fn gauss_legendre_16() -> &'static ([f64; 16], [f64; 16]) {
    static RULE: OnceLock<([f64; 16], [f64; 16])> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = 16usize;
        let mut nodes = [0.0; 16];
        let mut weights = [0.0; 16];
        for i in 0..n {
            // Newton on P_16 from the Chebyshev-like initial guess.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_16(x);
                let step = p / dp;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_16(x);
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        (nodes, weights)
    })
}

/// Value and derivative of the Legendre polynomial P_16 by the three-term
/// recurrence.
fn legendre_16(x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=16u32 {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = next;
    }
    let dp = 16.0 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Fourier coefficients f_hat(m) = integral of f(x) e^{-i pi m x} over [-1,1]
/// for |m| <= M, by composite 16-point Gauss-Legendre quadrature. The function
/// is evaluated once per quadrature node and reused for every mode.
pub fn fourier_data<F>(f: F, m: usize, quad_panels: usize) -> Result<Vec<Complex64>>
where
    F: Fn(f64) -> Complex64,
{
    if m == 0 {
        return Err(FEError::Parameter("M must be at least 1".into()));
    }
    if quad_panels < m {
        return Err(FEError::Parameter(format!(
            "{quad_panels} quadrature panels cannot resolve modes up to {m}; need at least M"
        )));
    }
    let (gl_nodes, gl_weights) = gauss_legendre_16();
    let width = 2.0 / quad_panels as f64;
    let half = width / 2.0;
    let mut xs = Vec::with_capacity(16 * quad_panels);
    let mut wf = Vec::with_capacity(16 * quad_panels);
    for p in 0..quad_panels {
        let center = -1.0 + (p as f64 + 0.5) * width;
        for (x, w) in gl_nodes.iter().zip(gl_weights) {
            let node = center + half * x;
            let v = f(node);
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(FEError::Data(format!(
                    "function value non-finite at quadrature node {node}"
                )));
            }
            xs.push(node);
            wf.push(half * w * v);
        }
    }
    let out = (-(m as i64)..=m as i64)
        .map(|mode| {
            xs.iter()
                .zip(&wf)
                .map(|(&x, v)| v * Complex64::from_polar(1.0, -PI * mode as f64 * x))
                .sum()
        })
        .collect();
    Ok(out)
}

/// Design matrix for Fourier-coefficient data: analytic inner products
/// (m,n) = integral of e^{i n pi x / T} e^{-i m pi x} = 2 sinc(pi (n/T - m)),
/// with no 1/sqrt(M) weight (the data live in l2).
pub fn build_fourier_design_matrix(config: &FEConfig) -> Result<DesignMatrix> {
    let rows = config.rows();
    let cols = config.cols();
    let mut entries = Array2::zeros((rows, cols));
    for row in 0..rows {
        let mode = row as f64 - config.m as f64;
        for col in 0..cols {
            let n = col as f64 - config.n as f64;
            let arg = PI * (n / config.t - mode);
            entries[(row, col)] = Complex64::new(2.0 * sinc(arg), 0.0);
        }
    }
    Ok(DesignMatrix {
        entries,
        config: *config,
        data_kind: DataKind::Fourier,
    })
}

pub(crate) fn sinc(t: f64) -> f64 {
    if t.abs() < 1e-8 {
        1.0 - t * t / 6.0
    } else {
        t.sin() / t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equispaced_values() {
        let s = equispaced_nodes(1).unwrap();
        assert_eq!(s.nodes, vec![-1.0, 0.0, 1.0]);
        let s = equispaced_nodes(2).unwrap();
        assert_eq!(s.nodes, vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        let s = equispaced_nodes(4).unwrap();
        for w in s.nodes.windows(2) {
            assert_eq!(w[1] - w[0], 0.25);
        }
        assert_eq!(s.norm, NormKind::Uniform);
        assert!(equispaced_nodes(0).is_err());
    }

    #[test]
    fn jittered_formula_and_antisymmetry() {
        let s = jittered_nodes(10, 0.5).unwrap();
        assert_eq!(s.len(), 21);
        assert_eq!(s.nodes[10], 0.0);
        let x1 = 0.1 + 0.05 * (100f64).sin();
        assert!((s.nodes[11] - x1).abs() < 1e-15);
        assert!((x1 - 0.074681).abs() < 1e-5);
        for (i, &x) in s.nodes.iter().enumerate() {
            let base = (i as f64 - 10.0) / 10.0;
            assert!((x - base).abs() <= 0.05 + 1e-15);
            assert_eq!(x, -s.nodes[20 - i]);
        }
    }

    #[test]
    fn jittered_out_of_range_errors_instead_of_clamping() {
        // sin(1) > 0 pushes the right endpoint past 1 for any amplitude.
        let err = jittered_nodes(1, 0.25).unwrap_err();
        assert!(err.to_string().contains("outside"));
        assert!(jittered_nodes(10, 0.0).is_err());
        assert!(jittered_nodes(10, 1.0).is_err());
    }

    #[test]
    fn log_nodes_closed_forms() {
        let s = log_nodes(4, 2.0).unwrap();
        assert_eq!(s.len(), 9);
        assert_eq!(s.nodes[4], 0.0);
        assert!((s.nodes[5] - 1.0 / 8.0).abs() < 1e-15); // x_1 = 1/(cM)
        assert!((s.nodes[6] - 0.25).abs() < 1e-15); // x_2 = 8^{-2/3}
        assert_eq!(s.nodes[8], 1.0); // x_M
        for i in 0..9 {
            assert_eq!(s.nodes[i], -s.nodes[8 - i]);
        }
        assert!(log_nodes(1, 2.0).is_err());
        assert!(log_nodes(4, 0.2).is_err()); // cM = 0.8 <= 1
    }

    #[test]
    fn mapped_chebyshev_closed_form_and_shape() {
        let s = mapped_chebyshev_nodes(0, 2.0).unwrap();
        assert_eq!(s.len(), 2);
        assert!((s.nodes[1] - 2.0 / 3.0).abs() < 1e-15);
        assert!((s.nodes[0] + 2.0 / 3.0).abs() < 1e-15);

        let s = mapped_chebyshev_nodes(12, 1.25).unwrap();
        assert_eq!(s.len(), 26);
        for &x in &s.nodes {
            assert!(x > -1.0 && x < 1.0);
        }
        for i in 0..26 {
            assert_eq!(s.nodes[i], -s.nodes[25 - i]);
        }
        for w in s.nodes.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn quadrature_rule_is_exact_through_degree_31() {
        let (nodes, weights) = gauss_legendre_16();
        let total: f64 = weights.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
        for k in [2usize, 8, 16, 30] {
            let quad: f64 = nodes
                .iter()
                .zip(weights)
                .map(|(x, w)| w * x.powi(k as i32))
                .sum();
            let exact = 2.0 / (k as f64 + 1.0);
            assert!(
                (quad - exact).abs() < 1e-14,
                "degree {k}: {quad} vs {exact}"
            );
        }
        // Odd powers vanish by symmetry.
        let odd: f64 = nodes
            .iter()
            .zip(weights)
            .map(|(x, w)| w * x.powi(7))
            .sum();
        assert!(odd.abs() < 1e-15);
    }

    #[test]
    fn fourier_data_orthogonality() {
        let m = 6;
        let hat = fourier_data(|_| Complex64::new(1.0, 0.0), m, 8).unwrap();
        for (i, v) in hat.iter().enumerate() {
            let expect = if i == m { 2.0 } else { 0.0 };
            assert!((v.re - expect).abs() < 1e-12 && v.im.abs() < 1e-12, "mode {i}");
        }
        let k = 3.0;
        let hat = fourier_data(|x| Complex64::from_polar(1.0, PI * k * x), m, 8).unwrap();
        for (i, v) in hat.iter().enumerate() {
            let expect = if i as i64 - m as i64 == 3 { 2.0 } else { 0.0 };
            assert!((v.re - expect).abs() < 1e-12 && v.im.abs() < 1e-12, "mode {i}");
        }
    }

    #[test]
    fn fourier_data_linear_function_closed_form() {
        let m = 10;
        let hat = fourier_data(|x| Complex64::new(x, 0.0), m, 12).unwrap();
        for (i, v) in hat.iter().enumerate() {
            let mode = i as i64 - m as i64;
            if mode == 0 {
                assert!(v.norm() < 1e-12);
            } else {
                let sign = if mode % 2 == 0 { 1.0 } else { -1.0 };
                let expect = Complex64::new(0.0, 2.0 * sign / (PI * mode as f64));
                assert!((v - expect).norm() < 1e-10, "mode {mode}: {v} vs {expect}");
            }
        }
    }

    #[test]
    fn fourier_data_panel_refinement_converges() {
        let m = 24;
        let f = |x: f64| Complex64::new(1.0 / (60.0 - 59.0 * x), 0.0);
        let coarse = fourier_data(f, m, 24).unwrap();
        let fine = fourier_data(f, m, 48).unwrap();
        for (a, b) in coarse.iter().zip(&fine) {
            assert!((a - b).norm() < 1e-10);
        }
        assert!(fourier_data(f, 25, 24).is_err());
    }

    #[test]
    fn fourier_design_matrix_entries() {
        let c = FEConfig::new(2.0, 4, 4).unwrap();
        let a = build_fourier_design_matrix(&c).unwrap();
        assert_eq!(a.data_kind, DataKind::Fourier);
        assert_eq!(a.entries.shape(), &[9, 9]);
        // (m=0, n=0) -> 2; n/T = m hits sinc(0) -> 2; (m=0, n=1) -> 4/pi.
        assert!((a.entries[(4, 4)].re - 2.0).abs() < 1e-15);
        assert!((a.entries[(6, 8)].re - 2.0).abs() < 1e-15);
        assert!((a.entries[(4, 5)].re - 4.0 / PI).abs() < 1e-14);
        // Entries are analytic inner products: match quadrature of the basis.
        let n = 3usize; // mode n - N = -1
        let hat = fourier_data(
            |x| Complex64::from_polar(1.0, -PI * x / 2.0),
            4,
            16,
        )
        .unwrap();
        for row in 0..9 {
            assert!((a.entries[(row, n)] - hat[row]).norm() < 1e-12);
        }
    }

    #[test]
    fn sample_set_csv_round_shape() {
        let s = jittered_nodes(10, 0.25).unwrap();
        let csv = s.to_csv();
        assert!(csv.starts_with("# kind=jittered M=10 delta_jit=2.5"));
        assert_eq!(csv.lines().count(), 2 + s.len());
        let f = fourier_modes(2).unwrap();
        let csv = f.to_csv();
        assert!(csv.contains("mode"));
        assert!(csv.lines().last().unwrap() == "2");
    }

    #[test]
    fn design_matrix_dispatch_checks_m() {
        let s = equispaced_nodes(4).unwrap();
        let c = FEConfig::new(2.0, 2, 4).unwrap();
        assert!(s.design_matrix(&c).is_ok());
        let wrong = FEConfig::new(2.0, 2, 5).unwrap();
        assert!(s.design_matrix(&wrong).is_err());
        let f = fourier_modes(4).unwrap();
        let a = f.design_matrix(&c).unwrap();
        assert_eq!(a.data_kind, DataKind::Fourier);
    }
}
