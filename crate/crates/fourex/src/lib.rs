//! Fourier extension approximation of nonperiodic functions.
//!
//! A function on [-1,1] is approximated by a trigonometric series that is
//! periodic on a larger interval [-T, T], fitted to sampled data by a
//! regularized least-squares solve. The crate provides:
//!
//! - the core types (configuration, series, design matrix, domain mapping),
//! - generators for equispaced, jittered, logarithmic, mapped-Chebyshev and
//!   Fourier-coefficient data,
//! - truncated-SVD and pivoted-QR solvers behind a pluggable interface,
//! - stability diagnostics (condition number kappa, defect constant lambda,
//!   their ratio mu) on a structured evaluation grid,
//! - the parameter-study layer (Theta search, slope fits, saturation,
//!   resolution power, a nine-function benchmark suite).

// Links the BLAS backend for ndarray's matrix products.
use blas_src as _;

pub mod config;
pub mod design;
pub mod diagnostics;
pub mod error;
pub mod mapping;
pub mod sampling;
pub mod series;
pub mod solvers;
pub mod study;

pub use config::{FEConfig, DEFAULT_EPSILON};
pub use diagnostics::{
    compute_diagnostics, condition_number, condition_number_l2, defect_constant,
    defect_constant_l2, mu_ratio, DiagnosticsRecord, EvalGrid, DEFAULT_GRID_K,
};
pub use design::{basis_scale, build_design_matrix, sample_function, DataKind, DesignMatrix};
pub use error::{FEError, Result};
pub use mapping::{max_geometric_rate, ExtensionMap};
pub use sampling::{
    build_fourier_design_matrix, equispaced_nodes, fourier_data, fourier_modes, jittered_nodes,
    log_nodes, mapped_chebyshev_nodes, NormKind, SampleKind, SampleParams, SampleSet,
};
pub use series::{eval_columns_on_grid, TrigSeries};
pub use solvers::{
    pivoted_qr_solve, singular_values, solve, svd_truncated_solve, SolveReport, SolverSpec,
    SvdFactors,
};
pub use study::{
    airy_ai, approximation_error, en_estimate, fe_approximate, fit_nu, fit_r, fit_tau,
    make_sample_set, resolution, resolution_constant, resolution_with_grid, saturation_check,
    test_function, theta, RegressionFit, ResolutionCurve, ScalingHint, ThetaCurve, ThetaEngine,
    ThetaResult,
};
