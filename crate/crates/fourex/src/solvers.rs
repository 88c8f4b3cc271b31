//! Regularized least-squares solvers: truncated SVD and a pivoted-QR
//! reference implementation behind a string-keyed registry.

use crate::config::DEFAULT_EPSILON;
use crate::design::{basis_scale, DataKind, DesignMatrix};
use crate::error::{FEError, Result};
use crate::series::TrigSeries;
use ndarray::{s, Array1, Array2, ArrayView1};
use ndarray_linalg::{JobSvd, SVDDC, SVD};
use num_complex::Complex64;

pub const TRUNCATED_SVD: &str = "truncated_svd";
pub const PIVOTED_QR: &str = "pivoted_qr";

/// Identifies a registered solver and its truncation tolerance. The
/// truncated-SVD solver drops singular values at or below epsilon (absolute);
/// the pivoted-QR solver reads epsilon as a relative diagonal cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverSpec {
    pub method: String,
    pub epsilon: f64,
}

impl SolverSpec {
    pub fn new(method: &str, epsilon: f64) -> Result<Self> {
        if method != TRUNCATED_SVD && method != PIVOTED_QR {
            return Err(FEError::Config(format!("unknown solver id {method:?}")));
        }
        if !epsilon.is_finite() || epsilon <= 0.0 || epsilon >= 1.0 {
            return Err(FEError::Parameter(format!(
                "solver tolerance must lie in (0,1), got {epsilon}"
            )));
        }
        Ok(SolverSpec {
            method: method.to_string(),
            epsilon,
        })
    }

    pub fn truncated_svd(epsilon: f64) -> Result<Self> {
        Self::new(TRUNCATED_SVD, epsilon)
    }

    pub fn pivoted_qr() -> Self {
        SolverSpec {
            method: PIVOTED_QR.to_string(),
            epsilon: DEFAULT_EPSILON,
        }
    }

    pub fn id(&self) -> &str {
        &self.method
    }
}

impl Default for SolverSpec {
    fn default() -> Self {
        SolverSpec {
            method: TRUNCATED_SVD.to_string(),
            epsilon: DEFAULT_EPSILON,
        }
    }
}

/// Outcome of a regularized solve. The coefficient series is stored in the
/// plain e^{i n pi x / T} basis, so its eval is the approximant itself.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub coefficients: TrigSeries,
    pub rank_kept: usize,
    pub sigma_max: f64,
    /// Smallest retained singular value; infinity when nothing was kept.
    pub sigma_min_kept: f64,
    pub residual_norm: f64,
}

/// Economy SVD factors of a design matrix, shared between the solver and the
/// diagnostics layer (which reuses one factorization for all canonical
/// right-hand sides).
#[derive(Debug, Clone)]
pub struct SvdFactors {
    /// (rows) x r, orthonormal columns.
    pub u: Array2<Complex64>,
    /// r singular values, descending.
    pub s: Array1<f64>,
    /// r x (cols), orthonormal rows.
    pub vt: Array2<Complex64>,
}

impl SvdFactors {
    /// Factors by divide-and-conquer, retrying with the standard algorithm
    /// when it fails to converge (which zgesdd does on some severely graded
    /// spectra).
    pub fn factor(entries: &Array2<Complex64>) -> Result<Self> {
        let r = entries.nrows().min(entries.ncols());
        match entries.svddc(JobSvd::Some) {
            Ok((Some(u), s, Some(vt))) => Ok(SvdFactors { u, s, vt }),
            _ => {
                let (u, s, vt) = entries
                    .svd(true, true)
                    .map_err(|e| FEError::Numerical(format!("SVD failed to converge: {e}")))?;
                let u = u.unwrap().slice_move(s![.., ..r]);
                let vt = vt.unwrap().slice_move(s![..r, ..]);
                Ok(SvdFactors { u, s, vt })
            }
        }
    }

    /// Number of singular values strictly above the cutoff (prefix of the
    /// descending spectrum).
    pub fn kept_count(&self, epsilon: f64) -> usize {
        self.s.iter().take_while(|&&v| v > epsilon).count()
    }

    /// Applies the truncated pseudoinverse to one right-hand side.
    pub fn apply_truncated(&self, b: ArrayView1<Complex64>, epsilon: f64) -> Array1<Complex64> {
        let k = self.kept_count(epsilon);
        let cols = self.vt.ncols();
        if k == 0 {
            return Array1::zeros(cols);
        }
        let uk = self.u.slice(s![.., ..k]);
        let mut y = uk.t().mapv(|v| v.conj()).dot(&b);
        for (i, v) in y.iter_mut().enumerate() {
            *v /= self.s[i];
        }
        self.vt.slice(s![..k, ..]).t().mapv(|v| v.conj()).dot(&y)
    }

    /// Dense truncated pseudoinverse V_k S_k^{-1} U_k^H, (cols) x (rows):
    /// column m is the coefficient response to the m-th canonical data vector.
    pub fn response_matrix(&self, epsilon: f64) -> Array2<Complex64> {
        let k = self.kept_count(epsilon);
        let (rows, cols) = (self.u.nrows(), self.vt.ncols());
        if k == 0 {
            return Array2::zeros((cols, rows));
        }
        let mut vk = self.vt.slice(s![..k, ..]).t().mapv(|v| v.conj());
        for (i, mut col) in vk.columns_mut().into_iter().enumerate() {
            col.mapv_inplace(|v| v / self.s[i]);
        }
        let ukh = self.u.slice(s![.., ..k]).t().mapv(|v| v.conj());
        vk.dot(&ukh)
    }

    /// Right singular vectors of the kept subspace, (cols) x k.
    pub fn kept_right_vectors(&self, epsilon: f64) -> Array2<Complex64> {
        let k = self.kept_count(epsilon);
        self.vt.slice(s![..k, ..]).t().mapv(|v| v.conj())
    }
}

fn check_rhs(a: &DesignMatrix, b: &[Complex64]) -> Result<()> {
    if b.len() != a.nrows() {
        return Err(FEError::Shape(format!(
            "right-hand side length {} does not match {} matrix rows",
            b.len(),
            a.nrows()
        )));
    }
    Ok(())
}

/// Converts a solver-space coefficient vector into the plain trigonometric
/// basis: pointwise design matrices carry the orthonormal-basis scale, the
/// Fourier kind is already plain.
fn to_series(a: &DesignMatrix, c: ArrayView1<Complex64>) -> Result<TrigSeries> {
    let coeffs = match a.data_kind {
        DataKind::Pointwise => {
            let scale = basis_scale(a.config.t);
            c.iter().map(|v| v * scale).collect()
        }
        DataKind::Fourier => c.to_vec(),
    };
    TrigSeries::new(a.config.t, coeffs)
}

fn report(
    a: &DesignMatrix,
    b: &[Complex64],
    c: Array1<Complex64>,
    rank_kept: usize,
    sigma_max: f64,
    sigma_min_kept: f64,
) -> Result<SolveReport> {
    let bv = ArrayView1::from(b);
    let residual = &a.entries.dot(&c) - &bv;
    let residual_norm = residual.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    Ok(SolveReport {
        coefficients: to_series(a, c.view())?,
        rank_kept,
        sigma_max,
        sigma_min_kept,
        residual_norm,
    })
}

/// Truncated-SVD solve: coefficients V Sigma^(eps) U^* b, inverting only
/// singular values strictly greater than epsilon.
pub fn svd_truncated_solve(
    a: &DesignMatrix,
    b: &[Complex64],
    epsilon: f64,
) -> Result<SolveReport> {
    if !epsilon.is_finite() || epsilon <= 0.0 || epsilon >= 1.0 {
        return Err(FEError::Parameter(format!(
            "truncation tolerance must lie in (0,1), got {epsilon}"
        )));
    }
    check_rhs(a, b)?;
    let f = SvdFactors::factor(&a.entries)?;
    let k = f.kept_count(epsilon);
    let c = f.apply_truncated(ArrayView1::from(b), epsilon);
    let sigma_max = f.s.first().copied().unwrap_or(0.0);
    let sigma_min_kept = if k > 0 { f.s[k - 1] } else { f64::INFINITY };
    report(a, b, c, k, sigma_max, sigma_min_kept)
}

/// Column-pivoted Householder factorization with the rank cut applied.
struct QrFactorization {
    /// Upper-triangular factor (pivoted column order).
    r: Array2<Complex64>,
    /// Column permutation: pivoted position j holds original column jpvt[j].
    jpvt: Vec<usize>,
    rank: usize,
}

/// Householder QR with column pivoting applied to `entries`; the columns of
/// `rhs` are transformed by the same reflections, leaving them ready for back
/// substitution. Rank is cut at the first diagonal entry at or below rcond
/// times the leading one.
fn pivoted_qr_factor(
    entries: &Array2<Complex64>,
    rhs: &mut Array2<Complex64>,
    rcond: f64,
) -> QrFactorization {
    let (rows, cols) = (entries.nrows(), entries.ncols());
    let steps = rows.min(cols);
    let mut r = entries.clone();
    let mut jpvt: Vec<usize> = (0..cols).collect();
    let mut norms2: Vec<f64> = (0..cols)
        .map(|j| r.column(j).iter().map(|v| v.norm_sqr()).sum())
        .collect();
    let norms2_init = norms2.clone();

    for step in 0..steps {
        // Pivot: bring the largest remaining column forward. Downdated norms
        // are recomputed when cancellation has eaten most of the original.
        for j in step..cols {
            if norms2[j] < 0.1 * norms2_init[jpvt[j]] {
                norms2[j] = r.slice(s![step.., j]).iter().map(|v| v.norm_sqr()).sum();
            }
        }
        let pivot = (step..cols)
            .max_by(|&x, &y| norms2[x].total_cmp(&norms2[y]))
            .unwrap();
        if pivot != step {
            for i in 0..rows {
                r.swap((i, step), (i, pivot));
            }
            jpvt.swap(step, pivot);
            norms2.swap(step, pivot);
        }

        let normx = r
            .slice(s![step.., step])
            .iter()
            .map(|v| v.norm_sqr())
            .sum::<f64>()
            .sqrt();
        if normx == 0.0 {
            break;
        }
        let x0 = r[(step, step)];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let beta = -phase * normx;
        let mut v: Vec<Complex64> = r.slice(s![step.., step]).to_vec();
        v[0] -= beta;
        let vnorm2: f64 = v.iter().map(|w| w.norm_sqr()).sum();
        if vnorm2 > 0.0 {
            let tau = 2.0 / vnorm2;
            for j in step..cols {
                let dot: Complex64 = v
                    .iter()
                    .enumerate()
                    .map(|(i, w)| w.conj() * r[(step + i, j)])
                    .sum();
                let scale = tau * dot;
                for (i, w) in v.iter().enumerate() {
                    r[(step + i, j)] -= scale * w;
                }
            }
            for mut col in rhs.columns_mut() {
                let dot: Complex64 = v
                    .iter()
                    .enumerate()
                    .map(|(i, w)| w.conj() * col[step + i])
                    .sum();
                let scale = tau * dot;
                for (i, w) in v.iter().enumerate() {
                    col[step + i] -= scale * w;
                }
            }
        }
        r[(step, step)] = beta;
        for i in step + 1..rows {
            r[(i, step)] = Complex64::new(0.0, 0.0);
        }
        for j in step + 1..cols {
            norms2[j] = (norms2[j] - r[(step, j)].norm_sqr()).max(0.0);
        }
    }

    let lead = r[(0, 0)].norm();
    let rank = (0..steps)
        .take_while(|&j| r[(j, j)].norm() > rcond * lead)
        .count();
    QrFactorization { r, jpvt, rank }
}

/// Basic least-squares solution from a transformed right-hand-side column:
/// back substitution on the leading rank block, scattered through the pivots.
fn qr_back_substitute(
    f: &QrFactorization,
    rhs: ArrayView1<Complex64>,
    cols: usize,
) -> Array1<Complex64> {
    let mut c: Array1<Complex64> = Array1::zeros(cols);
    for j in (0..f.rank).rev() {
        let mut acc = rhs[j];
        for l in j + 1..f.rank {
            acc -= f.r[(j, l)] * c[f.jpvt[l]];
        }
        c[f.jpvt[j]] = acc / f.r[(j, j)];
    }
    c
}

/// Householder QR with column pivoting; rank cut at the first diagonal entry
/// at or below rcond times the leading one, then a basic least-squares
/// solution on the pivoted leading block.
pub fn pivoted_qr_solve(a: &DesignMatrix, b: &[Complex64], rcond: f64) -> Result<SolveReport> {
    if !rcond.is_finite() || rcond <= 0.0 || rcond >= 1.0 {
        return Err(FEError::Parameter(format!(
            "diagonal cutoff must lie in (0,1), got {rcond}"
        )));
    }
    check_rhs(a, b)?;
    let mut rhs = Array2::from_shape_vec((b.len(), 1), b.to_vec()).expect("column shape");
    let f = pivoted_qr_factor(&a.entries, &mut rhs, rcond);
    let c = qr_back_substitute(&f, rhs.column(0), a.ncols());
    let diag_max = f.r[(0, 0)].norm();
    let diag_min = if f.rank > 0 {
        f.r[(f.rank - 1, f.rank - 1)].norm()
    } else {
        f64::INFINITY
    };
    report(a, b, c, f.rank, diag_max, diag_min)
}

/// Dispatches to the solver registered under spec.method.
pub fn solve(spec: &SolverSpec, a: &DesignMatrix, b: &[Complex64]) -> Result<SolveReport> {
    match spec.method.as_str() {
        TRUNCATED_SVD => svd_truncated_solve(a, b, spec.epsilon),
        PIVOTED_QR => pivoted_qr_solve(a, b, spec.epsilon),
        other => Err(FEError::Config(format!("unknown solver id {other:?}"))),
    }
}

/// Full singular spectrum of a design matrix, descending.
pub fn singular_values(a: &DesignMatrix) -> Result<Vec<f64>> {
    let f = SvdFactors::factor(&a.entries)?;
    Ok(f.s.to_vec())
}

fn validate_cutoff(epsilon: f64) -> Result<()> {
    if !epsilon.is_finite() || epsilon <= 0.0 || epsilon >= 1.0 {
        return Err(FEError::Parameter(format!(
            "solver cutoff must lie in (0,1), got {epsilon}"
        )));
    }
    Ok(())
}

/// I - V_k V_k^H: the orthogonal projector onto the dropped right-singular
/// directions.
fn svd_defect_projector(f: &SvdFactors, epsilon: f64) -> Array2<Complex64> {
    let vk = f.kept_right_vectors(epsilon);
    let mut w = Array2::eye(f.vt.ncols());
    if vk.ncols() > 0 {
        let vkh = vk.t().mapv(|v| v.conj());
        w = w - vk.dot(&vkh);
    }
    w
}

fn qr_effective_matrix(a: &DesignMatrix, rcond: f64) -> Array2<Complex64> {
    let (rows, cols) = (a.nrows(), a.ncols());
    let mut rhs = Array2::eye(rows);
    let f = pivoted_qr_factor(&a.entries, &mut rhs, rcond);
    let mut lmat = Array2::zeros((cols, rows));
    for (m, col) in rhs.columns().into_iter().enumerate() {
        lmat.column_mut(m).assign(&qr_back_substitute(&f, col, cols));
    }
    lmat
}

/// Dense matrix of the solver's linear action: column m is the solver-basis
/// coefficient response to the m-th canonical data vector, obtained from a
/// single factorization.
pub fn effective_matrix(spec: &SolverSpec, a: &DesignMatrix) -> Result<Array2<Complex64>> {
    validate_cutoff(spec.epsilon)?;
    match spec.method.as_str() {
        TRUNCATED_SVD => Ok(SvdFactors::factor(&a.entries)?.response_matrix(spec.epsilon)),
        PIVOTED_QR => Ok(qr_effective_matrix(a, spec.epsilon)),
        other => Err(FEError::Config(format!("unknown solver id {other:?}"))),
    }
}

/// Dense matrix of I minus the solver's action composed with sampling: column
/// n holds the coefficients of the basis series e_n minus its own
/// re-approximation. For the truncated SVD this is computed as the projector
/// onto the dropped right-singular subspace, which the product form only
/// matches up to factorization roundoff amplified by 1/sigma.
pub fn defect_matrix(spec: &SolverSpec, a: &DesignMatrix) -> Result<Array2<Complex64>> {
    validate_cutoff(spec.epsilon)?;
    match spec.method.as_str() {
        TRUNCATED_SVD => {
            let f = SvdFactors::factor(&a.entries)?;
            Ok(svd_defect_projector(&f, spec.epsilon))
        }
        PIVOTED_QR => {
            let lmat = qr_effective_matrix(a, spec.epsilon);
            let mut w = Array2::eye(a.ncols());
            w = w - lmat.dot(&a.entries);
            Ok(w)
        }
        other => Err(FEError::Config(format!("unknown solver id {other:?}"))),
    }
}

/// Effective matrix and defect matrix together, sharing one factorization.
pub fn solver_action_pair(
    spec: &SolverSpec,
    a: &DesignMatrix,
) -> Result<(Array2<Complex64>, Array2<Complex64>)> {
    validate_cutoff(spec.epsilon)?;
    match spec.method.as_str() {
        TRUNCATED_SVD => {
            let f = SvdFactors::factor(&a.entries)?;
            Ok((
                f.response_matrix(spec.epsilon),
                svd_defect_projector(&f, spec.epsilon),
            ))
        }
        PIVOTED_QR => {
            let lmat = qr_effective_matrix(a, spec.epsilon);
            let mut w = Array2::eye(a.ncols());
            w = w - lmat.dot(&a.entries);
            Ok((lmat, w))
        }
        other => Err(FEError::Config(format!("unknown solver id {other:?}"))),
    }
}
