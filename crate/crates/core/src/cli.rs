//! Command-line front end.
//!
//! Settings are resolved in this order, later sources winning: built-in
//! defaults, the `--config` file, each `--set KEY=VALUE` in the order given,
//! then the `--out` and `--workers` flags.
//!
//! Exit status: 0 on success, 1 on a usage or configuration error, 2 when the
//! computation or output fails.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::cache::{SpectrumCache, CACHE_DIR_ENV};
use crate::eigenstate_stats::{coefficient_histogram, collect_coefficients, kl_divergence_of};
use crate::error::Error;
use crate::histogram::Histogram;
use crate::model::ModelParams;
use crate::pipeline::{windowed_dataset, AnalysisOptions};
use crate::spectral_stats::{count_degenerate, eta_indicator, fit_brody, mean_ratio, spacing_ratios, unfold};
use crate::spectrum::{check_convergence, DEFAULT_TAIL_TOL, DEFAULT_TAIL_WIDTH};
use crate::sweep_io::{
    ensure_dir, histogram_file_name, read_csv, run_sweep, write_boundaries, write_text, RunConfig, SweepConfig,
    ERRORS_FILE, SWEEP_FILE,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "dicke-chaos",
    version,
    about = "Spectral and eigenstate chaos indicators for the extended Dicke model",
    after_help = format!("The spectrum cache directory is taken from ${CACHE_DIR_ENV} when set.")
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Windowed eigenvalues at one (kappa, lambda) point.
    Spectrum(CommonArgs),
    /// Unfolded spacing histogram with eta and the Brody beta.
    Spacing(CommonArgs),
    /// Spacing-ratio histogram with the mean ratio.
    Ratio(CommonArgs),
    /// Eigenvector-component histogram with its KL divergence from GOE.
    Eigstats(CommonArgs),
    /// Run the (kappa, lambda) grid and write sweep.csv, boundaries and histograms.
    Sweep(CommonArgs),
    /// Recompute boundary curves from an existing sweep.csv.
    Boundary(BoundaryArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// JSON config file.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Override a config key; repeatable, dotted keys reach nested fields.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Worker threads for sweeps.
    #[arg(long, value_name = "N")]
    workers: Option<usize>,
}

#[derive(Debug, Args)]
struct BoundaryArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Sweep table to read; defaults to sweep.csv in the output directory.
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e)
    }
}

fn usage(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

/// Parse `argv` (including the program name), run, and return the exit status.
pub fn main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            EXIT_RUNTIME
        }
    }
}

fn resolve(args: &CommonArgs) -> Result<RunConfig, Failure> {
    let mut cfg = RunConfig::load(args.config.as_deref(), &args.set).map_err(usage)?;
    if let Some(out) = &args.out {
        cfg.output_dir = out.clone();
    }
    if let Some(w) = args.workers {
        if w == 0 {
            return Err(Failure::Usage("--workers must be at least 1".into()));
        }
        cfg.workers = w;
    }
    Ok(cfg)
}

fn point(args: &CommonArgs) -> Result<(RunConfig, ModelParams), Failure> {
    let cfg = resolve(args)?;
    let params = cfg.params().map_err(usage)?;
    Ok((cfg, params))
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Spectrum(a) => spectrum(&a),
        Command::Spacing(a) => spacing(&a),
        Command::Ratio(a) => ratio(&a),
        Command::Eigstats(a) => eigstats(&a),
        Command::Sweep(a) => sweep(&a),
        Command::Boundary(a) => boundary(&a),
    }
}

fn write_hist(dir: &Path, kind: &str, params: &ModelParams, h: &Histogram) -> Result<(), Failure> {
    ensure_dir(dir)?;
    let path = dir.join(histogram_file_name(kind, params.kappa, params.lambda));
    h.write_json(&path)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn with_point_meta(h: Histogram, kind: &str, params: &ModelParams, n_levels: usize) -> Histogram {
    h.with_meta("kind", kind)
        .with_meta("kappa", params.kappa)
        .with_meta("lambda", params.lambda)
        .with_meta("j", params.j.value())
        .with_meta("n_cutoff", params.n_cutoff)
        .with_meta("n_levels", n_levels)
}

fn spectrum(args: &CommonArgs) -> Result<(), Failure> {
    let (cfg, params) = point(args)?;
    let cache = SpectrumCache::from_env()?;
    let ds = windowed_dataset(&params, false, cache.as_ref())?;
    let doc = json!({
        "params": params,
        "dim": ds.dim(),
        "n_levels": ds.energies.len(),
        "window_indices": ds.window_indices,
        "energies": ds.energies,
    });
    ensure_dir(&cfg.output_dir)?;
    let path = cfg
        .output_dir
        .join(format!("spectrum_{}_{}.json", params.kappa, params.lambda));
    write_text(&path, &serde_json::to_string_pretty(&doc).map_err(Error::from)?)?;
    println!("wrote {}", path.display());
    println!("dim = {}  levels in window = {}", ds.dim(), ds.energies.len());
    Ok(())
}

fn spacing(args: &CommonArgs) -> Result<(), Failure> {
    let (cfg, params) = point(args)?;
    let cache = SpectrumCache::from_env()?;
    let ds = windowed_dataset(&params, false, cache.as_ref())?;
    let unfolded = unfold(&ds.energies, cfg.fit_degree)?;
    let eta = eta_indicator(&unfolded.spacings)?;
    let brody = fit_brody(&unfolded.spacings)?;
    let range = AnalysisOptions::default().spacing_hist;
    let h = with_point_meta(
        Histogram::from_values(&unfolded.spacings, range)?,
        "spacing",
        &params,
        ds.energies.len(),
    )
    .with_meta("eta", eta.eta)
    .with_meta("beta", brody.beta)
    .with_meta("fit_degree", cfg.fit_degree)
    .with_meta("n_degenerate_dropped", eta.n_degenerate);
    write_hist(&cfg.output_dir, "spacing", &params, &h)?;
    println!("eta = {:.6}  beta = {:.6}", eta.eta, brody.beta);
    Ok(())
}

fn ratio(args: &CommonArgs) -> Result<(), Failure> {
    let (cfg, params) = point(args)?;
    let cache = SpectrumCache::from_env()?;
    let ds = windowed_dataset(&params, false, cache.as_ref())?;
    let sample = spacing_ratios(&ds.energies)?;
    let range = AnalysisOptions::default().ratio_hist;
    // A fully degenerate spectrum leaves no ratios; report that instead of failing.
    let (h, mean_r) = if sample.ratios.is_empty() {
        (Histogram::empty(range), f64::NAN)
    } else {
        (
            Histogram::from_values(&sample.ratios, range)?,
            mean_ratio(&sample.ratios)?,
        )
    };
    let raw: Vec<f64> = ds.energies.windows(2).map(|w| w[1] - w[0]).collect();
    let h = with_point_meta(h, "ratio", &params, ds.energies.len())
        .with_meta("mean_r", mean_r)
        .with_meta("n_ratios", sample.ratios.len())
        .with_meta("n_degenerate_dropped", sample.n_dropped)
        .with_meta("n_degenerate_spacings", count_degenerate(&raw));
    write_hist(&cfg.output_dir, "ratio", &params, &h)?;
    println!(
        "mean_r = {mean_r:.6}  ratios = {}  dropped = {}",
        sample.ratios.len(),
        sample.n_dropped
    );
    Ok(())
}

fn eigstats(args: &CommonArgs) -> Result<(), Failure> {
    let (cfg, params) = point(args)?;
    let mut ds = windowed_dataset(&params, true, None)?;
    let report = check_convergence(&ds, DEFAULT_TAIL_WIDTH, DEFAULT_TAIL_TOL)?;
    ds.converged = Some(report.flags.clone());
    let sample = collect_coefficients(&ds, &params.mid_window)?;
    let h = coefficient_histogram(&sample, cfg.bins)?;
    let d_kl = kl_divergence_of(&h, sample.dim);
    let h = with_point_meta(h, "coefficient", &params, ds.energies.len())
        .with_meta("d_kl", d_kl)
        .with_meta("dim", sample.dim)
        .with_meta("n_states", sample.n_states)
        .with_meta("c_min", sample.c_min)
        .with_meta("c_max", sample.c_max)
        .with_meta("converged_fraction", report.converged_fraction);
    write_hist(&cfg.output_dir, "coeff", &params, &h)?;
    println!(
        "d_kl = {d_kl:.6}  states = {}  converged_fraction = {:.4}",
        sample.n_states, report.converged_fraction
    );
    Ok(())
}

fn sweep(args: &CommonArgs) -> Result<(), Failure> {
    let cfg = resolve(args)?;
    let mut sweep = SweepConfig::from_run_config(&cfg).map_err(usage)?;
    sweep.cache = SpectrumCache::from_env()?;
    let report = run_sweep(&sweep)?;
    println!(
        "wrote {} ({} points)",
        cfg.output_dir.join(SWEEP_FILE).display(),
        report.rows.len()
    );
    if !report.failures.is_empty() {
        eprintln!(
            "{} point(s) failed; see {}",
            report.failures.len(),
            cfg.output_dir.join(ERRORS_FILE).display()
        );
    }
    Ok(())
}

fn boundary(args: &BoundaryArgs) -> Result<(), Failure> {
    let cfg = resolve(&args.common)?;
    cfg.thresholds.validate().map_err(usage)?;
    let input = args.input.clone().unwrap_or_else(|| cfg.output_dir.join(SWEEP_FILE));
    if !input.exists() {
        return Err(Failure::Usage(format!(
            "sweep table {} does not exist",
            input.display()
        )));
    }
    let rows = read_csv(&input)?;
    for path in write_boundaries(&rows, &cfg.thresholds, &cfg.output_dir)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
