//! Resolved experiment parameters and the JSON manifest they round-trip
//! through, plus the sweep grammar shared by every subcommand.

use fourex::{FEError, Result, SampleKind, SampleParams, SolverSpec};
use serde::{Deserialize, Serialize};

/// Every parameter of one experiment run, after defaults are applied.
/// Serialized verbatim as `manifest.json` next to the output tables;
/// parsing the manifest back yields an identical value, so each reported
/// number can be regenerated from the manifest and the library alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub command: String,
    pub t_values: Vec<f64>,
    pub eta_values: Vec<f64>,
    pub kappa_star: Option<f64>,
    pub epsilon: f64,
    pub grid_k: usize,
    pub m_values: Vec<usize>,
    pub data: String,
    pub delta_jit: Option<f64>,
    pub log_c: Option<f64>,
    pub solver: String,
    pub function: Option<usize>,
    pub omega_values: Vec<f64>,
    pub delta_res: f64,
    pub m_max: usize,
    pub fit_min: usize,
    pub jobs: usize,
    pub out: String,
}

impl ExperimentConfig {
    /// JSON manifest text, newline terminated.
    pub fn emit_manifest(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("config serializes");
        s.push('\n');
        s
    }

    /// Parses a manifest produced by `emit_manifest`.
    pub fn parse_manifest(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| FEError::Parameter(format!("manifest: {e}")))
    }

    pub fn sample_kind(&self) -> Result<SampleKind> {
        match self.data.as_str() {
            "equispaced" => Ok(SampleKind::Equispaced),
            "jittered" => Ok(SampleKind::Jittered),
            "logarithmic" => Ok(SampleKind::Logarithmic),
            "fourier" => Ok(SampleKind::Fourier),
            "mapped-cheb" => Ok(SampleKind::MappedChebyshev),
            other => Err(FEError::Parameter(format!(
                "data: unknown kind {other:?}, expected equispaced|jittered|logarithmic|fourier|mapped-cheb"
            ))),
        }
    }

    pub fn sample_params(&self) -> SampleParams {
        SampleParams {
            delta_jit: self.delta_jit,
            log_c: self.log_c,
            t: None,
        }
    }

    pub fn solver_spec(&self) -> Result<SolverSpec> {
        SolverSpec::new(&self.solver, self.epsilon)
            .map_err(|e| FEError::Parameter(format!("solver: {e}")))
    }
}

/// Expands a sweep written either as comma-separated values ("250,500,750")
/// or as an inclusive range "start:stop:step".
pub fn parse_m_range(text: &str) -> Result<Vec<usize>> {
    let bad = |msg: &str| FEError::Parameter(format!("m-range: {msg} in {text:?}"));
    if text.trim().is_empty() {
        return Err(bad("empty sweep"));
    }
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("range form is start:stop:step"));
        }
        let nums: Vec<usize> = parts
            .iter()
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad("range bounds must be nonnegative integers"))?;
        let (start, stop, step) = (nums[0], nums[1], nums[2]);
        if step == 0 {
            return Err(bad("step must be positive"));
        }
        if start > stop {
            return Err(bad("start exceeds stop"));
        }
        Ok((start..=stop).step_by(step).collect())
    } else {
        text.split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| bad("entries must be nonnegative integers"))
            })
            .collect()
    }
}
