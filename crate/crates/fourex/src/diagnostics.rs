//! Stability diagnostics evaluated on a fine uniform grid of [-1,1]: the
//! condition number kappa, the defect constant lambda, the ratio mu, and the
//! L2-norm counterparts used with the Fourier data model.

use crate::config::FEConfig;
use crate::design::{basis_scale, DataKind, DesignMatrix};
use crate::error::{FEError, Result};
use crate::sampling::{sinc, NormKind, SampleKind, SampleSet};
use crate::series::eval_columns_on_grid;
use crate::solvers::{defect_matrix, effective_matrix, solver_action_pair, SolverSpec};
use ndarray::{Array2, Axis};
use ndarray_linalg::{Eigh, JobSvd, SVDDC, SVD, UPLO};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Default grid resolution parameter K.
pub const DEFAULT_GRID_K: usize = 1 << 15;

/// Columns evaluated per grid pass, bounding the dense value buffer at large K.
const EVAL_CHUNK: usize = 64;

/// Uniform evaluation grid x_k = T(k-1)/K - 1 for k = 1..K_T with
/// K_T = floor(2K/T + 1): spacing T/K, first node exactly -1, and every node
/// inside [-1,1].
#[derive(Debug, Clone, PartialEq)]
pub struct EvalGrid {
    pub k: usize,
    pub t: f64,
    pub nodes: Vec<f64>,
}

impl EvalGrid {
    pub fn new(k: usize, t: f64) -> Result<Self> {
        if k == 0 {
            return Err(FEError::Parameter(
                "grid parameter K must be positive".into(),
            ));
        }
        if !t.is_finite() || t <= 1.0 {
            return Err(FEError::Domain(format!(
                "grid requires extension parameter T > 1, got {t}"
            )));
        }
        let count = (2.0 * k as f64 / t + 1.0).floor() as usize;
        let nodes = (0..count).map(|j| t * j as f64 / k as f64 - 1.0).collect();
        Ok(EvalGrid { k, t, nodes })
    }

    /// Number of grid nodes K_T.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// One computed diagnostics row.
#[derive(Debug, Clone)]
pub struct DiagnosticsRecord {
    pub config: FEConfig,
    pub solver: SolverSpec,
    pub k: usize,
    pub kappa: f64,
    pub lambda: f64,
    pub mu: f64,
    pub norm: NormKind,
}

impl DiagnosticsRecord {
    pub const CSV_HEADER: &'static str = "T,N,M,eta,epsilon,solver_id,K,kappa,lambda,mu,norm";

    pub fn csv_row(&self) -> String {
        format!(
            "{:.16e},{},{},{:.16e},{:.16e},{},{},{:.16e},{:.16e},{:.16e},{}",
            self.config.t,
            self.config.n,
            self.config.m,
            self.config.eta(),
            self.solver.epsilon,
            self.solver.id(),
            self.k,
            self.kappa,
            self.lambda,
            self.mu,
            self.norm.name()
        )
    }
}

fn check_grid(config: &FEConfig, grid: &EvalGrid) -> Result<()> {
    if grid.t != config.t {
        return Err(FEError::Config(format!(
            "grid extension parameter {} does not match configuration {}",
            grid.t, config.t
        )));
    }
    Ok(())
}

fn check_pointwise_uniform(nodes: &SampleSet) -> Result<()> {
    if nodes.kind == SampleKind::Fourier || nodes.norm != NormKind::Uniform {
        return Err(FEError::Config(format!(
            "uniform-norm diagnostics require a pointwise sample set, got {} data",
            nodes.kind.name()
        )));
    }
    Ok(())
}

/// Sup over grid nodes of the l1 row sum across the series family whose
/// coefficient vectors are the matrix columns. Returns the sup and the index
/// of the attaining node. Columns are evaluated in chunks so the dense value
/// buffer stays small at large K.
fn grid_rowsum_sup(cols: &Array2<Complex64>, t: f64, grid: &EvalGrid) -> Result<(f64, usize)> {
    let count = grid.len();
    let mut rowsum = vec![0.0f64; count];
    for chunk in cols.axis_chunks_iter(Axis(1), EVAL_CHUNK) {
        let vals = eval_columns_on_grid(&chunk, t, grid.k, count)?;
        for (acc, row) in rowsum.iter_mut().zip(vals.rows()) {
            *acc += row.iter().map(|v| v.norm()).sum::<f64>();
        }
    }
    let (argmax, &sup) = rowsum
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("grid is never empty");
    Ok((sup, argmax))
}

/// Condition number of the numerical FE map for pointwise data in the
/// uniform norm: the sup over the grid of the l1 row sum of the canonical
/// data responses. All 2M+1 canonical solves share one factorization.
pub fn condition_number(
    config: &FEConfig,
    nodes: &SampleSet,
    solver: &SolverSpec,
    grid: &EvalGrid,
) -> Result<f64> {
    check_pointwise_uniform(nodes)?;
    check_grid(config, grid)?;
    let a = nodes.design_matrix(config)?;
    let lmat = effective_matrix(solver, &a)?;
    let (sup, _) = grid_rowsum_sup(&lmat, config.t, grid)?;
    Ok(sup * basis_scale(config.t) / (config.m as f64).sqrt())
}

/// Defect constant: the sup over the grid of the l1 row sum across the basis
/// defect family, each member being a basis series minus the FE
/// re-approximation of its own samples.
pub fn defect_constant(
    config: &FEConfig,
    nodes: &SampleSet,
    solver: &SolverSpec,
    grid: &EvalGrid,
) -> Result<f64> {
    check_pointwise_uniform(nodes)?;
    check_grid(config, grid)?;
    let a = nodes.design_matrix(config)?;
    let w = defect_matrix(solver, &a)?;
    let (sup, _) = grid_rowsum_sup(&w, config.t, grid)?;
    Ok(sup * basis_scale(config.t))
}

/// The ratio mu = (lambda/kappa)(log M / M), natural log.
pub fn mu_ratio(kappa: f64, lambda: f64, m: f64) -> Result<f64> {
    if !kappa.is_finite() || kappa < 0.0 || !lambda.is_finite() || lambda < 0.0 {
        return Err(FEError::Parameter(format!(
            "kappa and lambda must be finite and nonnegative, got {kappa} and {lambda}"
        )));
    }
    if kappa == 0.0 {
        return Err(FEError::Degenerate(
            "kappa = 0 admits no defect-to-condition ratio".into(),
        ));
    }
    if !(m.is_finite() && m > 0.0) {
        return Err(FEError::Parameter(format!(
            "sample half-count must be positive, got {m}"
        )));
    }
    if lambda == 0.0 {
        return Ok(0.0);
    }
    Ok((lambda / kappa) * (m.ln() / m))
}

/// Gram matrix of the basis e^{i n pi x / T} on [-1,1]:
/// G_{n,n'} = 2 sinc(pi (n - n') / T).
fn gram_matrix(t: f64, n: usize) -> Array2<f64> {
    let size = 2 * n + 1;
    Array2::from_shape_fn((size, size), |(i, j)| {
        2.0 * sinc(PI * (i as f64 - j as f64) / t)
    })
}

/// Symmetric square root of the Gram matrix. Eigenvalues below -1e-10 are a
/// hard failure; smaller negative dust is clamped to zero.
fn gram_sqrt(g: &Array2<f64>) -> Result<Array2<Complex64>> {
    let (eigs, vecs) = g
        .eigh(UPLO::Lower)
        .map_err(|e| FEError::Numerical(format!("Gram eigendecomposition failed: {e}")))?;
    if let Some(&bad) = eigs.iter().find(|&&w| w < -1e-10) {
        return Err(FEError::Numerical(format!(
            "Gram matrix eigenvalue {bad} is negative beyond tolerance"
        )));
    }
    let mut scaled = vecs.clone();
    for (j, mut col) in scaled.columns_mut().into_iter().enumerate() {
        let s = eigs[j].max(0.0).sqrt();
        col.mapv_inplace(|v| v * s);
    }
    Ok(scaled.dot(&vecs.t()).mapv(|v| Complex64::new(v, 0.0)))
}

/// Largest singular value of a dense complex matrix.
fn spectral_norm(mat: &Array2<Complex64>) -> Result<f64> {
    let s = match mat.svddc(JobSvd::None) {
        Ok((_, s, _)) => s,
        Err(_) => {
            mat.svd(false, false)
                .map_err(|e| FEError::Numerical(format!("SVD failed to converge: {e}")))?
                .1
        }
    };
    Ok(s.first().copied().unwrap_or(0.0))
}

fn check_fourier(config: &FEConfig, a: &DesignMatrix) -> Result<()> {
    if a.data_kind != DataKind::Fourier {
        return Err(FEError::Config(
            "L2 diagnostics require the Fourier data model".into(),
        ));
    }
    if a.config.t != config.t || a.config.n != config.n || a.config.m != config.m {
        return Err(FEError::Config(format!(
            "design matrix shape (T={}, N={}, M={}) does not match configuration (T={}, N={}, M={})",
            a.config.t, a.config.n, a.config.m, config.t, config.n, config.m
        )));
    }
    Ok(())
}

/// l2 -> L2(-1,1) operator norm of the numerical FE map for the Fourier data
/// model: the largest singular value of Q L_mat, where Q*Q is the basis Gram
/// matrix on [-1,1] and the columns of L_mat are the canonical responses.
pub fn condition_number_l2(
    config: &FEConfig,
    a: &DesignMatrix,
    solver: &SolverSpec,
    grid: &EvalGrid,
) -> Result<f64> {
    check_fourier(config, a)?;
    check_grid(config, grid)?;
    let lmat = effective_matrix(solver, a)?;
    let q = gram_sqrt(&gram_matrix(config.t, config.n))?;
    spectral_norm(&q.dot(&lmat))
}

/// L2 defect constant for the Fourier data model: the largest singular value
/// of Q (I - L_mat A).
pub fn defect_constant_l2(
    config: &FEConfig,
    a: &DesignMatrix,
    solver: &SolverSpec,
    grid: &EvalGrid,
) -> Result<f64> {
    check_fourier(config, a)?;
    check_grid(config, grid)?;
    let w = defect_matrix(solver, a)?;
    let q = gram_sqrt(&gram_matrix(config.t, config.n))?;
    spectral_norm(&q.dot(&w))
}

/// Computes kappa, lambda, and mu for one instance, sharing a single
/// factorization between the condition number and the defect constant. The
/// sample set's norm marker selects the uniform pointwise pipeline or the L2
/// Fourier pipeline.
pub fn compute_diagnostics(
    config: &FEConfig,
    nodes: &SampleSet,
    solver: &SolverSpec,
    grid: &EvalGrid,
) -> Result<DiagnosticsRecord> {
    check_grid(config, grid)?;
    let a = nodes.design_matrix(config)?;
    let (kappa, lambda) = match nodes.norm {
        NormKind::Uniform => {
            check_pointwise_uniform(nodes)?;
            let (lmat, w) = solver_action_pair(solver, &a)?;
            let (ksup, _) = grid_rowsum_sup(&lmat, config.t, grid)?;
            let (lsup, _) = grid_rowsum_sup(&w, config.t, grid)?;
            (
                ksup * basis_scale(config.t) / (config.m as f64).sqrt(),
                lsup * basis_scale(config.t),
            )
        }
        NormKind::L2 => {
            check_fourier(config, &a)?;
            let (lmat, w) = solver_action_pair(solver, &a)?;
            let q = gram_sqrt(&gram_matrix(config.t, config.n))?;
            (spectral_norm(&q.dot(&lmat))?, spectral_norm(&q.dot(&w))?)
        }
    };
    let mu = mu_ratio(kappa, lambda, config.m as f64)?;
    Ok(DiagnosticsRecord {
        config: *config,
        solver: solver.clone(),
        k: grid.k,
        kappa,
        lambda,
        mu,
        norm: nodes.norm,
    })
}
