//! Python bindings over the core approximation library: node generation,
//! value-based fitting, series evaluation, conditioning diagnostics, and the
//! stable-mode-count and resolution searches.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use fourex::{
    compute_diagnostics, make_sample_set, resolution_with_grid, solve, EvalGrid, FEConfig,
    FEError, SampleKind, SampleParams, SolverSpec, ThetaEngine, TrigSeries,
};

fn value_error(e: FEError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn kind_from_name(name: &str) -> PyResult<SampleKind> {
    match name {
        "equispaced" => Ok(SampleKind::Equispaced),
        "jittered" => Ok(SampleKind::Jittered),
        "logarithmic" => Ok(SampleKind::Logarithmic),
        "mapped-cheb" => Ok(SampleKind::MappedChebyshev),
        "fourier" => Ok(SampleKind::Fourier),
        other => Err(PyValueError::new_err(format!(
            "unknown data kind {other:?}; expected equispaced, jittered, logarithmic, \
             mapped-cheb, or fourier"
        ))),
    }
}

fn grid_for(grid_k: usize, t: f64) -> PyResult<EvalGrid> {
    EvalGrid::new(grid_k, t).map_err(value_error)
}

/// A truncated trigonometric series on [-T, T], the result of a fit.
#[pyclass(frozen)]
struct Series {
    inner: TrigSeries,
}

#[pymethods]
impl Series {
    /// Extension parameter T of the underlying basis.
    #[getter]
    fn t(&self) -> f64 {
        self.inner.t
    }

    /// Coefficients in mode order n = -N..N.
    #[getter]
    fn coeffs(&self) -> Vec<Complex64> {
        self.inner.coeffs.clone()
    }

    /// Mode half-count N.
    fn order(&self) -> usize {
        self.inner.order()
    }

    /// Evaluates the series at each point by direct summation.
    fn eval(&self, points: Vec<f64>) -> PyResult<Vec<Complex64>> {
        self.inner.eval_points(&points).map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!("Series(t={}, order={})", self.inner.t, self.inner.order())
    }
}

/// Sample locations for a pointwise data family, or mode indices -M..M for
/// the "fourier" family. Fit expects values taken at exactly these nodes.
#[pyfunction]
#[pyo3(signature = (kind, m, t = 2.0, delta_jit = 0.5, log_c = 2.0))]
fn nodes(kind: &str, m: usize, t: f64, delta_jit: f64, log_c: f64) -> PyResult<Vec<f64>> {
    let params = SampleParams {
        delta_jit: Some(delta_jit),
        log_c: Some(log_c),
        t: Some(t),
    };
    let set = make_sample_set(kind_from_name(kind)?, &params, m, t).map_err(value_error)?;
    Ok(set.nodes)
}

/// Fits a series with 2N+1 modes on [-T, T] to data values. For the pointwise
/// families the values are function samples at the nodes reported by
/// nodes(kind, m, ...); for "fourier" they are the 2M+1 transform values.
#[pyfunction]
#[pyo3(signature = (
    values, t, n, m,
    epsilon = 1e-13, data = "equispaced", solver = "truncated_svd",
    delta_jit = 0.5, log_c = 2.0,
))]
#[allow(clippy::too_many_arguments)]
fn fit(
    values: Vec<Complex64>,
    t: f64,
    n: usize,
    m: usize,
    epsilon: f64,
    data: &str,
    solver: &str,
    delta_jit: f64,
    log_c: f64,
) -> PyResult<Series> {
    let kind = kind_from_name(data)?;
    let params = SampleParams {
        delta_jit: Some(delta_jit),
        log_c: Some(log_c),
        t: Some(t),
    };
    let set = make_sample_set(kind, &params, m, t).map_err(value_error)?;
    if values.len() != set.nodes.len() {
        return Err(PyValueError::new_err(format!(
            "expected {} values for {data} data at M = {m}, got {}",
            set.nodes.len(),
            values.len()
        )));
    }
    let config = FEConfig::with_epsilon(t, n, m, epsilon).map_err(value_error)?;
    let a = set.design_matrix(&config).map_err(value_error)?;
    let b = match kind {
        SampleKind::Fourier => values,
        _ => {
            let scale = 1.0 / (m as f64).sqrt();
            values.iter().map(|v| v * scale).collect()
        }
    };
    let spec = SolverSpec::new(solver, epsilon).map_err(value_error)?;
    let rep = solve(&spec, &a, &b).map_err(value_error)?;
    Ok(Series {
        inner: rep.coefficients,
    })
}

/// Condition number kappa, defect constant lambda, and the combined ratio
/// mu = (lambda/kappa)(ln M / M) for equispaced data at one (T, N, M).
#[pyfunction]
#[pyo3(signature = (t, n, m, epsilon = 1e-13, grid_k = 4096))]
fn diagnostics(
    py: Python<'_>,
    t: f64,
    n: usize,
    m: usize,
    epsilon: f64,
    grid_k: usize,
) -> PyResult<Py<PyDict>> {
    let config = FEConfig::with_epsilon(t, n, m, epsilon).map_err(value_error)?;
    let set = make_sample_set(SampleKind::Equispaced, &SampleParams::default(), m, t)
        .map_err(value_error)?;
    let spec = SolverSpec::new("truncated_svd", epsilon).map_err(value_error)?;
    let grid = grid_for(grid_k, t)?;
    let rec = compute_diagnostics(&config, &set, &spec, &grid).map_err(value_error)?;
    let out = PyDict::new(py);
    out.set_item("kappa", rec.kappa)?;
    out.set_item("lambda", rec.lambda)?;
    out.set_item("mu", rec.mu)?;
    Ok(out.unbind())
}

/// Largest mode half-count N in [0, M] whose condition number stays within
/// the budget kappa_star * ln M, for equispaced data.
#[pyfunction]
#[pyo3(signature = (t, m, kappa_star, epsilon = 1e-13, grid_k = 4096))]
fn theta(t: f64, m: usize, kappa_star: f64, epsilon: f64, grid_k: usize) -> PyResult<usize> {
    let grid = grid_for(grid_k, t)?;
    let mut engine = ThetaEngine::equispaced(t, epsilon, grid).map_err(value_error)?;
    Ok(engine.theta(m, kappa_star).map_err(value_error)?.n)
}

/// Smallest sample half-count M at which the fit of exp(i omega x) with
/// N = M/eta modes reaches sup error delta on [-1, 1]. The returned M means
/// 2M+1 equispaced data points.
#[pyfunction]
#[pyo3(signature = (omega, delta, t, eta, epsilon = 1e-13, m_max = 4000, grid_k = 4096))]
fn resolution(
    omega: f64,
    delta: f64,
    t: f64,
    eta: f64,
    epsilon: f64,
    m_max: usize,
    grid_k: usize,
) -> PyResult<usize> {
    let spec = SolverSpec::new("truncated_svd", epsilon).map_err(value_error)?;
    let grid = grid_for(grid_k, t)?;
    resolution_with_grid(omega, delta, t, eta, &spec, m_max, &grid, None).map_err(value_error)
}

#[pymodule]
fn fourex_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Series>()?;
    m.add_function(wrap_pyfunction!(nodes, m)?)?;
    m.add_function(wrap_pyfunction!(fit, m)?)?;
    m.add_function(wrap_pyfunction!(diagnostics, m)?)?;
    m.add_function(wrap_pyfunction!(theta, m)?)?;
    m.add_function(wrap_pyfunction!(resolution, m)?)?;
    Ok(())
}
