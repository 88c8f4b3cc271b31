//! Parameter studies: stable-mode-count search (theta), slope regressions
//! (nu, tau), saturation detection, best-approximation estimates, resolution
//! power, and the nine-function benchmark suite.

use crate::config::FEConfig;
use crate::design::{basis_scale, sample_function};
use crate::diagnostics::{condition_number, condition_number_l2, EvalGrid, DEFAULT_GRID_K};
use crate::error::{FEError, Result};
use crate::sampling::{
    build_fourier_design_matrix, equispaced_nodes, fourier_data, fourier_modes, jittered_nodes,
    log_nodes, mapped_chebyshev_nodes, SampleKind, SampleParams, SampleSet,
};
use crate::series::{eval_columns_on_grid, TrigSeries};
use crate::solvers::{solve, SolverSpec};
use num_complex::Complex64;
use std::collections::HashMap;
use std::f64::consts::PI;

/// Growth proxy for reporting a theta curve: N scales with M for most data
/// models, with M/log M for logarithmic nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalingHint {
    M,
    MOverLogM,
}

impl ScalingHint {
    /// S(M), the normalization used in reported curves.
    pub fn scale(&self, m: usize) -> f64 {
        match self {
            ScalingHint::M => m as f64,
            ScalingHint::MOverLogM => m as f64 / (m as f64).ln(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ScalingHint::M => "M",
            ScalingHint::MOverLogM => "M/logM",
        }
    }
}

/// Result of one stable-mode-count search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThetaResult {
    /// Largest N in [0, M] whose condition number stays within budget.
    pub n: usize,
    /// True when even N = 0 exceeds the budget; n is 0 in that case.
    pub degenerate: bool,
}

/// Theta values across an M sweep at fixed T, budget factor, and data model.
#[derive(Debug, Clone)]
pub struct ThetaCurve {
    pub t: f64,
    pub kappa_star: f64,
    pub epsilon: f64,
    pub solver_id: String,
    /// (M, Theta) pairs in increasing M order.
    pub points: Vec<(usize, usize)>,
    pub scaling_hint: ScalingHint,
}

/// Ordinary least-squares line fit over a restricted M range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegressionFit {
    pub slope: f64,
    pub intercept: f64,
    /// Inclusive M interval the fit was computed over.
    pub fit_range: (usize, usize),
    pub residual_rms: f64,
}

/// Minimal sample counts resolving e^{i pi omega x} across a frequency sweep.
#[derive(Debug, Clone)]
pub struct ResolutionCurve {
    pub t: f64,
    pub eta: f64,
    pub epsilon: f64,
    pub delta_res: f64,
    /// (omega, minimal M) pairs in increasing omega order.
    pub points: Vec<(f64, usize)>,
    /// Mean of the last three M/omega ratios.
    pub fitted_r: f64,
}

/// Generates a data set of the given kind for sample count m. Jitter and
/// logarithmic clustering strengths come from `params`, falling back to
/// delta = 0.5 and c = 2 when unset; mapped Chebyshev nodes use the
/// extension half-period t.
pub fn make_sample_set(kind: SampleKind, params: &SampleParams, m: usize, t: f64) -> Result<SampleSet> {
    match kind {
        SampleKind::Equispaced => equispaced_nodes(m),
        SampleKind::Jittered => jittered_nodes(m, params.delta_jit.unwrap_or(0.5)),
        SampleKind::Logarithmic => log_nodes(m, params.log_c.unwrap_or(2.0)),
        SampleKind::MappedChebyshev => mapped_chebyshev_nodes(m, t),
        SampleKind::Fourier => fourier_modes(m),
    }
}

/// Searches the largest stable mode count N for given sample budgets,
/// caching condition numbers across repeated queries so that sweeps over M
/// and over budget factors share work.
pub struct ThetaEngine {
    pub t: f64,
    pub solver: SolverSpec,
    pub kind: SampleKind,
    pub params: SampleParams,
    pub grid: EvalGrid,
    cache: HashMap<(usize, usize), f64>,
}

impl ThetaEngine {
    pub fn new(
        t: f64,
        solver: SolverSpec,
        kind: SampleKind,
        params: SampleParams,
        grid: EvalGrid,
    ) -> Result<Self> {
        if grid.t != t {
            return Err(FEError::Config(format!(
                "grid extension parameter {} does not match {}",
                grid.t, t
            )));
        }
        Ok(ThetaEngine {
            t,
            solver,
            kind,
            params,
            grid,
            cache: HashMap::new(),
        })
    }

    /// Equispaced data with the given solver tolerance.
    pub fn equispaced(t: f64, epsilon: f64, grid: EvalGrid) -> Result<Self> {
        Self::new(
            t,
            SolverSpec::truncated_svd(epsilon)?,
            SampleKind::Equispaced,
            SampleParams::default(),
            grid,
        )
    }

    /// Generates the data set of this engine's kind for sample count m.
    pub fn sample_set(&self, m: usize) -> Result<SampleSet> {
        make_sample_set(self.kind, &self.params, m, self.t)
    }

    /// Condition number at (N, M), cached.
    pub fn kappa(&mut self, n: usize, m: usize) -> Result<f64> {
        if let Some(&k) = self.cache.get(&(n, m)) {
            return Ok(k);
        }
        let config = FEConfig::with_epsilon(self.t, n, m, self.solver.epsilon)?;
        let k = match self.kind {
            SampleKind::Fourier => {
                let a = build_fourier_design_matrix(&config)?;
                condition_number_l2(&config, &a, &self.solver, &self.grid)?
            }
            _ => {
                let nodes = self.sample_set(m)?;
                condition_number(&config, &nodes, &self.solver, &self.grid)?
            }
        };
        self.cache.insert((n, m), k);
        Ok(k)
    }

    /// Largest N in [0, M] with kappa(N, M) <= kappa_star * log M. Bisection
    /// assumes kappa is nondecreasing in N; the returned boundary pair is
    /// re-verified and a descending linear scan takes over if the check
    /// fails. A hint (e.g. scaled from a neighboring M) is tried first.
    pub fn theta_with_hint(
        &mut self,
        m: usize,
        kappa_star: f64,
        hint: Option<usize>,
    ) -> Result<ThetaResult> {
        if !(kappa_star.is_finite() && kappa_star > 1.0) {
            return Err(FEError::Parameter(format!(
                "budget factor must exceed 1, got {kappa_star}"
            )));
        }
        if m < 2 {
            return Err(FEError::Parameter(format!(
                "sample half-count must be at least 2, got {m}"
            )));
        }
        let budget = kappa_star * (m as f64).ln();
        if self.kappa(0, m)? > budget {
            return Ok(ThetaResult {
                n: 0,
                degenerate: true,
            });
        }
        if self.kappa(m, m)? <= budget {
            return Ok(ThetaResult {
                n: m,
                degenerate: false,
            });
        }
        let mut lo = 0usize;
        let mut hi = m;
        if let Some(h) = hint {
            if h > 0 && h < m {
                if self.kappa(h, m)? <= budget {
                    if self.kappa(h + 1, m)? > budget {
                        return Ok(ThetaResult {
                            n: h,
                            degenerate: false,
                        });
                    }
                    lo = h + 1;
                } else {
                    hi = h;
                }
            }
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.kappa(mid, m)? <= budget {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if self.kappa(lo, m)? <= budget && self.kappa(lo + 1, m)? > budget {
            return Ok(ThetaResult {
                n: lo,
                degenerate: false,
            });
        }
        // Monotonicity violated; fall back to a descending scan.
        for n in (0..=m).rev() {
            if self.kappa(n, m)? <= budget {
                return Ok(ThetaResult {
                    n,
                    degenerate: false,
                });
            }
        }
        Ok(ThetaResult {
            n: 0,
            degenerate: true,
        })
    }

    pub fn theta(&mut self, m: usize, kappa_star: f64) -> Result<ThetaResult> {
        self.theta_with_hint(m, kappa_star, None)
    }

    /// Theta across an increasing M sweep, warm-starting each search from
    /// the previous point scaled to the new M.
    pub fn theta_curve(&mut self, kappa_star: f64, ms: &[usize]) -> Result<ThetaCurve> {
        if ms.is_empty() {
            return Err(FEError::Parameter("empty M sweep".into()));
        }
        if ms.windows(2).any(|w| w[1] <= w[0]) {
            return Err(FEError::Parameter(
                "M sweep must be strictly increasing".into(),
            ));
        }
        let mut points: Vec<(usize, usize)> = Vec::with_capacity(ms.len());
        for &m in ms {
            let hint = points
                .last()
                .map(|&(pm, pt)| ((pt as f64) * (m as f64) / (pm as f64)).round() as usize);
            let r = self.theta_with_hint(m, kappa_star, hint)?;
            points.push((m, r.n));
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[j].1 + 1 < points[i].1 {
                    return Err(FEError::Numerical(format!(
                        "stable mode count dropped from {} at M={} to {} at M={}",
                        points[i].1, points[i].0, points[j].1, points[j].0
                    )));
                }
            }
        }
        Ok(ThetaCurve {
            t: self.t,
            kappa_star,
            epsilon: self.solver.epsilon,
            solver_id: self.solver.id().to_string(),
            points,
            scaling_hint: if self.kind == SampleKind::Logarithmic {
                ScalingHint::MOverLogM
            } else {
                ScalingHint::M
            },
        })
    }
}

/// One-off stable-mode-count search without a reusable engine.
pub fn theta(
    t: f64,
    m: usize,
    kappa_star: f64,
    solver: &SolverSpec,
    kind: SampleKind,
    params: SampleParams,
    grid: &EvalGrid,
) -> Result<ThetaResult> {
    ThetaEngine::new(t, solver.clone(), kind, params, grid.clone())?.theta(m, kappa_star)
}

fn ols(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = points
        .iter()
        .map(|p| {
            let r = p.1 - slope * p.0 - intercept;
            r * r
        })
        .sum();
    (slope, intercept, (ss / n).sqrt())
}

/// Least-squares slope of Theta against M over points inside fit_range
/// (inclusive). This is the growth rate nu.
pub fn fit_nu(curve: &ThetaCurve, fit_range: (usize, usize)) -> Result<RegressionFit> {
    let pts: Vec<(f64, f64)> = curve
        .points
        .iter()
        .filter(|&&(m, _)| m >= fit_range.0 && m <= fit_range.1)
        .map(|&(m, th)| (m as f64, th as f64))
        .collect();
    if pts.len() < 4 {
        return Err(FEError::InsufficientData(format!(
            "regression needs at least 4 points in M range [{}, {}], found {}",
            fit_range.0,
            fit_range.1,
            pts.len()
        )));
    }
    let (slope, intercept, residual_rms) = ols(&pts);
    Ok(RegressionFit {
        slope,
        intercept,
        fit_range,
        residual_rms,
    })
}

/// Least-squares slope of nu against T restricted to non-saturated T values
/// (fit includes an intercept). This is tau.
pub fn fit_tau(nu_by_t: &[(f64, f64)], saturated_ts: &[f64]) -> Result<f64> {
    let pts: Vec<(f64, f64)> = nu_by_t
        .iter()
        .filter(|(t, _)| !saturated_ts.contains(t))
        .cloned()
        .collect();
    if pts.len() < 3 {
        return Err(FEError::InsufficientData(format!(
            "slope of nu vs T needs at least 3 non-saturated points, found {}",
            pts.len()
        )));
    }
    Ok(ols(&pts).0)
}

/// True when the eta = 1 condition number at sample count M stays below the
/// budget kappa_star * log M, i.e. the full-rank system is already too
/// stable for the budget to bind (a finite-M proxy for saturation).
pub fn saturation_check(
    t: f64,
    kappa_star: f64,
    m: usize,
    epsilon: f64,
    grid: &EvalGrid,
) -> Result<bool> {
    if m < 100 {
        return Err(FEError::Parameter(format!(
            "saturation proxy needs M >= 100, got {m}"
        )));
    }
    if !(kappa_star.is_finite() && kappa_star > 0.0) {
        return Err(FEError::Parameter(format!(
            "budget factor must be positive, got {kappa_star}"
        )));
    }
    let solver = SolverSpec::truncated_svd(epsilon)?;
    let config = FEConfig::with_epsilon(t, m, m, epsilon)?;
    let nodes = equispaced_nodes(m)?;
    let kappa = condition_number(&config, &nodes, &solver, grid)?;
    Ok(kappa / (m as f64).ln() < kappa_star)
}

/// Fits sampled data of f with the given solver and returns the approximant.
/// Pointwise kinds sample function values; the Fourier kind integrates
/// Fourier coefficients by composite quadrature.
pub fn fe_approximate<F>(
    f: F,
    config: &FEConfig,
    nodes: &SampleSet,
    solver: &SolverSpec,
) -> Result<TrigSeries>
where
    F: Fn(f64) -> Complex64,
{
    let a = nodes.design_matrix(config)?;
    let b = match nodes.kind {
        SampleKind::Fourier => fourier_data(&f, config.m, 2 * config.m + 16)?,
        _ => sample_function(&f, &nodes.nodes)?,
    };
    Ok(solve(solver, &a, &b)?.coefficients)
}

/// Max over grid nodes of |f(x) - series(x)|.
pub fn approximation_error<F>(f: F, series: &TrigSeries, grid: &EvalGrid) -> Result<f64>
where
    F: Fn(f64) -> Complex64,
{
    if grid.t != series.t {
        return Err(FEError::Config(format!(
            "grid extension parameter {} does not match series {}",
            grid.t, series.t
        )));
    }
    let count = grid.len();
    let coeffs =
        ndarray::Array2::from_shape_fn((series.coeffs.len(), 1), |(i, _)| series.coeffs[i]);
    let vals = eval_columns_on_grid(&coeffs.view(), series.t, grid.k, count)?;
    let mut err = 0.0f64;
    for (j, &x) in grid.nodes.iter().enumerate() {
        let fv = f(x);
        if !fv.re.is_finite() || !fv.im.is_finite() {
            return Err(FEError::Data(format!(
                "function value at x = {x} is not finite"
            )));
        }
        err = err.max((fv - vals[(j, 0)]).norm());
    }
    Ok(err)
}

/// Estimates the regularized best-approximation error of f in the span of
/// 2N+1 modes: a dense least-squares fit on a 16(2N+1)-point equispaced fine
/// grid with truncation threshold mu, reporting sup-grid misfit plus
/// mu times the sup coefficient norm. Returns (error, coefficient norm).
/// This is a finite-precision surrogate for the true infimum.
pub fn en_estimate<F>(f: F, n: usize, t: f64, mu: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Complex64,
{
    if !(0.0..1.0).contains(&mu) {
        return Err(FEError::Parameter(format!(
            "penalty weight must lie in [0,1), got {mu}"
        )));
    }
    let m_fine = 8 * (2 * n + 1);
    let eps_solver = if mu > 0.0 { mu } else { f64::MIN_POSITIVE };
    let config = FEConfig::with_epsilon(t, n, m_fine, eps_solver)?;
    let nodes = equispaced_nodes(m_fine)?;
    let solver = SolverSpec::truncated_svd(eps_solver)?;
    let series = fe_approximate(&f, &config, &nodes, &solver)?;
    let coeff_norm = series
        .coeffs
        .iter()
        .map(|c| c.norm())
        .fold(0.0f64, f64::max)
        / basis_scale(t);
    let mut err = 0.0f64;
    for &x in &nodes.nodes {
        let fv = f(x);
        if !fv.re.is_finite() || !fv.im.is_finite() {
            return Err(FEError::Data(format!(
                "function value at x = {x} is not finite"
            )));
        }
        err = err.max((fv - series.eval(x)).norm());
    }
    Ok((err + mu * coeff_norm, coeff_norm))
}

/// Sup-grid error of the FE fit of e^{i pi omega x} from 2M+1 equispaced
/// samples with N = floor(M / eta) modes.
fn oscillatory_error(
    omega: f64,
    t: f64,
    eta: f64,
    solver: &SolverSpec,
    m: usize,
    grid: &EvalGrid,
) -> Result<f64> {
    let n = ((m as f64) / eta).floor() as usize;
    let config = FEConfig::with_epsilon(t, n.min(m), m, solver.epsilon)?;
    let nodes = equispaced_nodes(m)?;
    let f = |x: f64| Complex64::from_polar(1.0, PI * omega * x);
    let series = fe_approximate(f, &config, &nodes, solver)?;
    approximation_error(f, &series, grid)
}

/// Minimal sample half-count M <= m_max resolving e^{i pi omega x} to sup
/// error below delta_res, with N = floor(M / eta). Exponential bracketing
/// followed by bisection; the error is monotone decreasing in M up to noise,
/// and the returned boundary pair is re-verified with a linear-scan
/// fallback. The optional hint seeds the bracket (e.g. from a neighboring
/// frequency's ratio).
pub fn resolution_with_grid(
    omega: f64,
    delta_res: f64,
    t: f64,
    eta: f64,
    solver: &SolverSpec,
    m_max: usize,
    grid: &EvalGrid,
    hint: Option<usize>,
) -> Result<usize> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(FEError::Parameter(format!(
            "frequency must be positive, got {omega}"
        )));
    }
    if !(delta_res > 0.0 && delta_res < 1.0) {
        return Err(FEError::Parameter(format!(
            "accuracy threshold must lie in (0,1), got {delta_res}"
        )));
    }
    if !(eta.is_finite() && eta >= 1.0) {
        return Err(FEError::Parameter(format!(
            "oversampling ratio must be at least 1, got {eta}"
        )));
    }
    if m_max < 2 {
        return Err(FEError::Parameter(format!(
            "search limit must be at least 2, got {m_max}"
        )));
    }
    let mut cache: HashMap<usize, f64> = HashMap::new();
    let errf = |m: usize, cache: &mut HashMap<usize, f64>| -> Result<f64> {
        if let Some(&e) = cache.get(&m) {
            return Ok(e);
        }
        let e = oscillatory_error(omega, t, eta, solver, m, grid)?;
        cache.insert(m, e);
        Ok(e)
    };
    let not_resolved = |cache: &HashMap<usize, f64>| {
        let (best_m, best_error) = cache
            .iter()
            .fold((0usize, f64::INFINITY), |acc, (&m, &e)| {
                if e < acc.1 {
                    (m, e)
                } else {
                    acc
                }
            });
        FEError::NotResolved { best_error, best_m }
    };

    // Exponential bracketing from the hint (or the frequency scale T*eta*w).
    let start = hint
        .unwrap_or(((t * eta * omega).ceil() as usize).max(4))
        .clamp(2, m_max);
    let mut hi = start;
    while errf(hi, &mut cache)? >= delta_res {
        if hi == m_max {
            return Err(not_resolved(&cache));
        }
        hi = (2 * hi).min(m_max);
    }
    let mut lo = hi / 2;
    while lo >= 2 && errf(lo, &mut cache)? < delta_res {
        hi = lo;
        lo /= 2;
    }
    if lo < 2 {
        // Resolved all the way down; only the floor remains to check.
        if hi == 2 || errf(2, &mut cache)? < delta_res {
            return Ok(2);
        }
        lo = 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if errf(mid, &mut cache)? < delta_res {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if errf(hi, &mut cache)? < delta_res && errf(hi - 1, &mut cache)? >= delta_res {
        return Ok(hi);
    }
    // Monotonicity violated near the boundary; scan upward for the first
    // verified pair.
    for m in 2..=m_max {
        if errf(m, &mut cache)? < delta_res && (m == 2 || errf(m - 1, &mut cache)? >= delta_res) {
            return Ok(m);
        }
    }
    Err(not_resolved(&cache))
}

/// Resolution search on the default grid.
pub fn resolution(
    omega: f64,
    delta_res: f64,
    t: f64,
    eta: f64,
    solver: &SolverSpec,
    m_max: usize,
) -> Result<usize> {
    resolution_with_grid(
        omega,
        delta_res,
        t,
        eta,
        solver,
        m_max,
        &EvalGrid::new(DEFAULT_GRID_K, t)?,
        None,
    )
}

/// Mean of the last up-to-three R/omega ratios of a resolution sweep.
pub fn fit_r(points: &[(f64, usize)]) -> f64 {
    if points.is_empty() {
        return f64::NAN;
    }
    let tail = &points[points.len().saturating_sub(3)..];
    tail.iter().map(|&(w, m)| m as f64 / w).sum::<f64>() / tail.len() as f64
}

/// Resolution sweep across increasing frequencies; the fitted constant is
/// the mean of the last three M/omega ratios, each of which must sit within
/// 15% of the fit for the sweep to count as asymptotic.
pub fn resolution_constant(
    t: f64,
    eta: f64,
    delta_res: f64,
    omegas: &[f64],
    solver: &SolverSpec,
    m_max: usize,
    grid: &EvalGrid,
) -> Result<ResolutionCurve> {
    if omegas.len() < 3 {
        return Err(FEError::InsufficientData(format!(
            "resolution fit needs at least 3 frequencies, found {}",
            omegas.len()
        )));
    }
    if omegas.windows(2).any(|w| w[1] <= w[0]) || omegas.iter().any(|&w| w <= 0.0) {
        return Err(FEError::Parameter(
            "frequencies must be positive and strictly increasing".into(),
        ));
    }
    let mut points: Vec<(f64, usize)> = Vec::with_capacity(omegas.len());
    let mut ratio: Option<f64> = None;
    for &w in omegas {
        let hint = ratio.map(|r| (r * w) as usize);
        let m = resolution_with_grid(w, delta_res, t, eta, solver, m_max, grid, hint)?;
        ratio = Some(m as f64 / w);
        points.push((w, m));
    }
    let fitted_r = fit_r(&points);
    for &(w, m) in &points[points.len() - 3..] {
        let r = m as f64 / w;
        if (r - fitted_r).abs() > 0.15 * fitted_r {
            return Err(FEError::Numerical(format!(
                "ratio {r} at frequency {w} deviates from fit {fitted_r} by more than 15%"
            )));
        }
    }
    Ok(ResolutionCurve {
        t,
        eta,
        epsilon: solver.epsilon,
        delta_res,
        points,
        fitted_r,
    })
}

const AIRY_AT_ZERO: f64 = 0.35502805388781723926;
const AIRY_SLOPE_AT_ZERO: f64 = 0.25881940379280679840;

fn airy_maclaurin(z: f64) -> f64 {
    let z3 = z * z * z;
    let mut facc = 1.0f64;
    let mut term = 1.0f64;
    let mut k = 0usize;
    while k < 200 {
        term *= z3 / (((3 * k + 2) * (3 * k + 3)) as f64);
        facc += term;
        k += 1;
        if term.abs() < 1e-18 * facc.abs().max(1.0) {
            break;
        }
    }
    let mut gacc = z;
    term = z;
    k = 0;
    while k < 200 {
        term *= z3 / (((3 * k + 3) * (3 * k + 4)) as f64);
        gacc += term;
        k += 1;
        if term.abs() < 1e-18 * gacc.abs().max(1.0) {
            break;
        }
    }
    AIRY_AT_ZERO * facc - AIRY_SLOPE_AT_ZERO * gacc
}

/// Terms u_k / xi^k of the Airy asymptotic series, emitted until they stop
/// decreasing (optimal truncation) or fall below 1e-17.
fn airy_asymptotic_terms(xi: f64) -> Vec<f64> {
    let mut terms = Vec::new();
    let mut u = 1.0f64;
    let mut term = 1.0f64;
    let mut prev = f64::INFINITY;
    let mut k = 0usize;
    while k <= 60 && term < prev {
        terms.push(term);
        if term < 1e-17 {
            break;
        }
        prev = term;
        u *= ((6 * k + 1) * (6 * k + 5)) as f64 / (72.0 * (k + 1) as f64);
        k += 1;
        term = u / xi.powi(k as i32);
    }
    terms
}

/// Airy function Ai on the real line: Maclaurin series on [-8, 6], the
/// oscillatory asymptotic expansion below, the decaying expansion above.
pub fn airy_ai(z: f64) -> f64 {
    if !z.is_finite() {
        return if z > 0.0 { 0.0 } else { f64::NAN };
    }
    if (-8.0..=6.0).contains(&z) {
        return airy_maclaurin(z);
    }
    if z < 0.0 {
        let t = -z;
        let xi = 2.0 / 3.0 * t.powf(1.5);
        let mut cos_sum = 0.0f64;
        let mut sin_sum = 0.0f64;
        for (k, term) in airy_asymptotic_terms(xi).iter().enumerate() {
            if k % 2 == 0 {
                cos_sum += if (k / 2) % 2 == 0 { *term } else { -term };
            } else {
                sin_sum += if ((k - 1) / 2) % 2 == 0 { *term } else { -term };
            }
        }
        let ang = xi - PI / 4.0;
        (ang.cos() * cos_sum + ang.sin() * sin_sum) / (PI.sqrt() * t.powf(0.25))
    } else {
        let xi = 2.0 / 3.0 * z.powf(1.5);
        let mut sum = 0.0f64;
        for (k, term) in airy_asymptotic_terms(xi).iter().enumerate() {
            sum += if k % 2 == 0 { *term } else { -term };
        }
        (-xi).exp() * sum / (2.0 * PI.sqrt() * z.powf(0.25))
    }
}

/// The nine benchmark functions. All are returned as complex-valued
/// callables; all but the oscillatory exponential are real-valued.
pub fn test_function(id: usize) -> Result<Box<dyn Fn(f64) -> Complex64 + Send + Sync>> {
    let real = |f: Box<dyn Fn(f64) -> f64 + Send + Sync>| -> Box<dyn Fn(f64) -> Complex64 + Send + Sync> {
        Box::new(move |x| Complex64::new(f(x), 0.0))
    };
    Ok(match id {
        1 => Box::new(|x| Complex64::from_polar(1.0, 230.0 * 2.0f64.sqrt() * PI * x)),
        2 => real(Box::new(|x| (400.0 * x * x).sin())),
        3 => real(Box::new(|x| airy_ai(-66.0 - 70.0 * x))),
        4 => real(Box::new(|x| 1.0 / (1.0 + 1500.0 * x * x))),
        5 => real(Box::new(|x| 1.0 / (60.0 - 59.0 * x))),
        6 => real(Box::new(|x| {
            let s = (8.0 * x).sin();
            1.0 / (1.0 + 25.0 * s * s)
        })),
        7 => real(Box::new(|x| {
            ((21.6 * PI * x - 10.8 * PI).sin() - (8.0 * PI * x).cos()).exp()
        })),
        8 => real(Box::new(|x| {
            if x == 0.0 {
                0.0
            } else {
                (-1.0 / (64.0 * x * x)).exp()
            }
        })),
        9 => real(Box::new(|x| {
            let mut s = (PI * x).sin();
            let mut f = s;
            for _ in 0..10 {
                s = 0.75 * (1.0 - 2.0 * s.powi(4));
                f += s;
            }
            f
        })),
        _ => {
            return Err(FEError::Parameter(format!(
                "unknown test function id {id}; valid ids are 1..9"
            )))
        }
    })
}
