//! Experiment runner for the Fourier extension library: conditioning
//! diagnostics, stable-mode-count sweeps, benchmark approximation errors,
//! resolution searches, and best-approximation curves, all written as
//! deterministic CSV/JSON tables plus a replayable manifest.

mod commands;
mod config;

use std::path::Path;

use clap::{Args, Parser, Subcommand};
use fourex::{FEError, Result, DEFAULT_EPSILON, DEFAULT_GRID_K};

use commands::{
    cmd_approx, cmd_diagnostics, cmd_en_curve, cmd_resolution, cmd_theta, gnuplot_columns,
    CommandOutput,
};
use config::{parse_m_range, ExperimentConfig};

#[derive(Parser)]
#[command(
    name = "fourex",
    version,
    about = "Fourier extension experiment tables: conditioning, stable mode counts, \
             approximation errors, resolution"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Condition and defect diagnostics over a (T, eta, M) grid.
    Diagnostics(CommonArgs),
    /// Largest stable mode counts and their growth-rate fits.
    Theta(CommonArgs),
    /// Approximation error sweeps for the benchmark functions.
    Approx(CommonArgs),
    /// Minimal sample budgets resolving oscillatory modes.
    Resolution(CommonArgs),
    /// Best-approximation error estimates as the mode count grows.
    EnCurve(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Extension half-periods, comma separated.
    #[arg(long = "T", value_delimiter = ',', default_value = "2.0")]
    t: Vec<f64>,

    /// Oversampling factors eta = M/N, comma separated.
    #[arg(long, value_delimiter = ',')]
    eta: Vec<f64>,

    /// Condition-number budget factor (threshold kappa-star * log M).
    #[arg(long = "kappa-star")]
    kappa_star: Option<f64>,

    /// Solver truncation threshold; also the penalty weight of en-curve.
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,

    /// Evaluation grid density: about 2K/T + 1 points cover [-1, 1].
    #[arg(long = "grid-k", default_value_t = DEFAULT_GRID_K)]
    grid_k: usize,

    /// Sample sweep as comma-separated values or start:stop:step; the N
    /// sweep for en-curve.
    #[arg(long = "m-range", default_value = "300:1000:100")]
    m_range: String,

    /// Data layout.
    #[arg(long, default_value = "equispaced")]
    data: String,

    /// Perturbation amplitude for jittered data, in node spacings.
    #[arg(long = "delta-jit")]
    delta_jit: Option<f64>,

    /// Endpoint clustering strength for logarithmic data.
    #[arg(long = "log-c")]
    log_c: Option<f64>,

    /// Benchmark function id (1 through 9).
    #[arg(long)]
    function: Option<usize>,

    /// Oscillation frequencies for resolution, comma separated.
    #[arg(long, value_delimiter = ',')]
    omega: Vec<f64>,

    /// Sup-error threshold defining "resolved".
    #[arg(long = "delta-res", default_value_t = 1e-3)]
    delta_res: f64,

    /// Largest sample budget a resolution search may try.
    #[arg(long = "m-max", default_value_t = 4000)]
    m_max: usize,

    /// Smallest M included in slope regressions.
    #[arg(long = "fit-min", default_value_t = 300)]
    fit_min: usize,

    /// Least-squares solver id.
    #[arg(long, default_value = "truncated_svd")]
    solver: String,

    /// Worker threads; 0 sizes the pool to the machine.
    #[arg(long, default_value_t = 1)]
    jobs: usize,

    /// Output directory for manifest.json and the tables.
    #[arg(long, default_value = "out")]
    out: String,
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(&cli));
}

fn run(cli: &Cli) -> i32 {
    let (name, args) = match &cli.command {
        Command::Diagnostics(a) => ("diagnostics", a),
        Command::Theta(a) => ("theta", a),
        Command::Approx(a) => ("approx", a),
        Command::Resolution(a) => ("resolution", a),
        Command::EnCurve(a) => ("en-curve", a),
    };
    let cfg = match build_config(name, args) {
        Ok(cfg) => cfg,
        Err(e) => return fail(&e),
    };
    let result = match name {
        "diagnostics" => cmd_diagnostics(&cfg),
        "theta" => cmd_theta(&cfg),
        "approx" => cmd_approx(&cfg),
        "resolution" => cmd_resolution(&cfg),
        _ => cmd_en_curve(&cfg),
    };
    match result {
        Ok(output) => match write_outputs(&cfg, &output) {
            Ok(()) => output.exit_code,
            Err(e) => fail(&e),
        },
        Err(e) => fail(&e),
    }
}

fn fail(e: &FEError) -> i32 {
    eprintln!("error: {e}");
    exit_code(e)
}

/// 2 flags a bad request, 3 a numerical failure, 4 a resolution search that
/// ran out of budget everywhere.
fn exit_code(e: &FEError) -> i32 {
    match e {
        FEError::Parameter(_)
        | FEError::Config(_)
        | FEError::Domain(_)
        | FEError::Shape(_)
        | FEError::InsufficientData(_) => 2,
        FEError::NotResolved { .. } => 4,
        FEError::Data(_) | FEError::Numerical(_) | FEError::Degenerate(_) => 3,
    }
}

fn build_config(command: &str, args: &CommonArgs) -> Result<ExperimentConfig> {
    for &t in &args.t {
        if !(t.is_finite() && t > 1.0) {
            return Err(FEError::Parameter(format!(
                "T: extension half-period must exceed 1, got {t}"
            )));
        }
    }
    if !(args.epsilon.is_finite() && args.epsilon > 0.0 && args.epsilon < 1.0) {
        return Err(FEError::Parameter(format!(
            "epsilon: threshold must lie in (0, 1), got {}",
            args.epsilon
        )));
    }
    if args.grid_k == 0 {
        return Err(FEError::Parameter(
            "grid-k: grid density must be positive".into(),
        ));
    }
    let cfg = ExperimentConfig {
        command: command.into(),
        t_values: args.t.clone(),
        eta_values: args.eta.clone(),
        kappa_star: args.kappa_star,
        epsilon: args.epsilon,
        grid_k: args.grid_k,
        m_values: parse_m_range(&args.m_range)?,
        data: args.data.clone(),
        delta_jit: args.delta_jit,
        log_c: args.log_c,
        solver: args.solver.clone(),
        function: args.function,
        omega_values: args.omega.clone(),
        delta_res: args.delta_res,
        m_max: args.m_max,
        fit_min: args.fit_min,
        jobs: args.jobs,
        out: args.out.clone(),
    };
    // Fail fast on unknown names so nothing is computed first.
    cfg.sample_kind()?;
    cfg.solver_spec()?;
    Ok(cfg)
}

/// Writes the manifest and every table, plus a gnuplot-ready .dat twin of
/// each CSV, then lists the paths on stdout.
fn write_outputs(cfg: &ExperimentConfig, output: &CommandOutput) -> Result<()> {
    let dir = Path::new(&cfg.out);
    let io_err = |e: std::io::Error| FEError::Data(format!("out: {}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io_err)?;
    let manifest = cfg.emit_manifest();
    debug_assert!(
        ExperimentConfig::parse_manifest(&manifest)
            .map(|c| c == *cfg)
            .unwrap_or(false),
        "manifest must round-trip losslessly"
    );
    let mut written = vec![("manifest.json".to_string(), manifest)];
    for (name, content) in &output.files {
        written.push((name.clone(), content.clone()));
        if let Some(stem) = name.strip_suffix(".csv") {
            written.push((format!("{stem}.dat"), gnuplot_columns(content)));
        }
    }
    for (name, content) in &written {
        std::fs::write(dir.join(name), content).map_err(io_err)?;
        println!("{}", dir.join(name).display());
    }
    Ok(())
}
