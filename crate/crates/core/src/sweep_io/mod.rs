//! `(κ, λ)` grid sweeps and their on-disk outputs.
//!
//! Grid points run concurrently on a dedicated thread pool; rows are gathered
//! in grid order, so the worker count never changes an output byte.

mod config;
mod table;

use std::path::{Path, PathBuf};

use rayon::prelude::*;

pub use config::{apply_overrides, RunConfig, Thresholds};
pub use table::{
    format_float, read_boundary_csv, read_csv, write_boundary_csv, write_csv, write_errors_csv, write_text,
    PointFailure, SweepResultRow, BOUNDARY_HEADER, SWEEP_HEADER,
};

use crate::cache::SpectrumCache;
use crate::error::{Error, Result};
use crate::histogram::Histogram;
use crate::model::{enumerate_basis, ModelParams};
use crate::pipeline::{analyze_point, AnalysisOptions, SECTOR};
use crate::spectral_stats::{chaos_boundary, BoundaryPoint, GridValue, Indicator};

pub const SWEEP_FILE: &str = "sweep.csv";
pub const ERRORS_FILE: &str = "sweep_errors.csv";

#[derive(Debug, Clone)]
pub struct SweepConfig {
    /// Model parameters; `lambda` and `kappa` are taken from the grids.
    pub base: ModelParams,
    pub kappa_grid: Vec<f64>,
    pub lambda_grid: Vec<f64>,
    pub options: AnalysisOptions,
    pub thresholds: Thresholds,
    pub workers: usize,
    /// Where outputs go; `None` computes rows only.
    pub output_dir: Option<PathBuf>,
    pub histograms: bool,
    pub cache: Option<SpectrumCache>,
}

impl SweepConfig {
    pub fn new(base: ModelParams, kappa_grid: Vec<f64>, lambda_grid: Vec<f64>) -> Self {
        SweepConfig {
            base,
            kappa_grid,
            lambda_grid,
            options: AnalysisOptions::default(),
            thresholds: Thresholds::default(),
            workers: 1,
            output_dir: None,
            histograms: false,
            cache: None,
        }
    }

    pub fn from_run_config(cfg: &RunConfig) -> Result<Self> {
        let options = AnalysisOptions {
            fit_degree: cfg.fit_degree,
            bins: cfg.bins,
            eigenstates: cfg.eigenstate_stats,
            ..AnalysisOptions::default()
        };
        let sweep = SweepConfig {
            base: cfg.params()?,
            kappa_grid: cfg.kappa_grid.clone(),
            lambda_grid: cfg.lambda_grid.clone(),
            options,
            thresholds: cfg.thresholds,
            workers: cfg.workers,
            output_dir: Some(cfg.output_dir.clone()),
            histograms: cfg.histograms,
            cache: None,
        };
        sweep.validate()?;
        Ok(sweep)
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        for (name, grid) in [("kappa_grid", &self.kappa_grid), ("lambda_grid", &self.lambda_grid)] {
            if grid.is_empty() {
                return Err(Error::Config(format!("{name} is empty")));
            }
            if grid.iter().any(|v| !v.is_finite()) || grid.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::Config(format!("{name} must be finite and strictly ascending")));
            }
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        self.thresholds.validate()
    }

    /// Grid points in output order: κ ascending, then λ ascending.
    pub fn points(&self) -> Vec<(f64, f64)> {
        self.kappa_grid
            .iter()
            .flat_map(|&k| self.lambda_grid.iter().map(move |&l| (k, l)))
            .collect()
    }
}

/// Output file name for a per-point histogram.
pub fn histogram_file_name(kind: &str, kappa: f64, lambda: f64) -> String {
    format!("hist_{kind}_{kappa}_{lambda}.json")
}

pub fn boundary_file_name(indicator: Indicator) -> String {
    format!("boundary_{}.csv", indicator.name())
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub rows: Vec<SweepResultRow>,
    pub failures: Vec<PointFailure>,
    /// `(file name, histogram)` pairs, in grid order.
    pub histograms: Vec<(String, Histogram)>,
}

type PointOutput = (SweepResultRow, Vec<(String, Histogram)>);

fn run_point(cfg: &SweepConfig, kappa: f64, lambda: f64) -> Result<PointOutput> {
    let params = cfg.base.clone().with_coupling(lambda, kappa);
    let a = analyze_point(&params, &cfg.options, cfg.cache.as_ref())?;
    let row = SweepResultRow {
        kappa,
        lambda,
        dim: a.dim,
        n_levels: a.indicators.n_levels,
        eta: a.indicators.eta,
        beta: a.indicators.beta,
        mean_r: a.indicators.mean_r,
        d_kl: a.indicators.d_kl.unwrap_or(f64::NAN),
        converged_fraction: a.indicators.converged_fraction.unwrap_or(f64::NAN),
        n_degenerate_dropped: a.summary.n_degenerate,
    };
    let mut hists = Vec::new();
    if cfg.histograms {
        hists.push((
            histogram_file_name("spacing", kappa, lambda),
            a.spacing_histogram(cfg.options.spacing_hist)?,
        ));
        hists.push((
            histogram_file_name("ratio", kappa, lambda),
            a.ratio_histogram(cfg.options.ratio_hist)?,
        ));
        if let Some(h) = a.coefficient_hist {
            hists.push((histogram_file_name("coeff", kappa, lambda), h));
        }
    }
    Ok((row, hists))
}

/// Compute every grid point. Failing points become NaN rows plus an entry in
/// `failures`. When `output_dir` is set the outputs are written as well.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {} workers: {e}", cfg.workers)))?;
    let points = cfg.points();
    let results: Vec<Result<PointOutput>> =
        pool.install(|| points.par_iter().map(|&(k, l)| run_point(cfg, k, l)).collect());

    let dim = enumerate_basis(&cfg.base, SECTOR).len();
    let mut report = SweepReport {
        rows: Vec::with_capacity(points.len()),
        failures: Vec::new(),
        histograms: Vec::new(),
    };
    for (&(kappa, lambda), result) in points.iter().zip(results) {
        match result {
            Ok((row, hists)) => {
                report.rows.push(row);
                report.histograms.extend(hists);
            }
            Err(e) => {
                report.rows.push(SweepResultRow::failed(kappa, lambda, dim));
                report.failures.push(PointFailure {
                    kappa,
                    lambda,
                    message: e.to_string(),
                });
            }
        }
    }
    if let Some(dir) = &cfg.output_dir {
        write_sweep_outputs(&report, &cfg.thresholds, dir)?;
    }
    Ok(report)
}

/// Boundary curve of every indicator.
pub fn boundaries(rows: &[SweepResultRow], thresholds: &Thresholds) -> Result<Vec<(Indicator, Vec<BoundaryPoint>)>> {
    Indicator::ALL
        .iter()
        .map(|&ind| {
            let values: Vec<GridValue> = rows
                .iter()
                .map(|r| GridValue {
                    kappa: r.kappa,
                    lambda: r.lambda,
                    value: r.get(ind),
                })
                .collect();
            Ok((ind, chaos_boundary(&values, ind, thresholds.for_indicator(ind))?))
        })
        .collect()
}

pub fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| Error::OutputUnwritable {
        path: dir.to_owned(),
        source,
    })
}

/// Write the boundary CSVs derived from `rows` into `dir`.
pub fn write_boundaries(rows: &[SweepResultRow], thresholds: &Thresholds, dir: &Path) -> Result<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let mut written = Vec::new();
    for (ind, pts) in boundaries(rows, thresholds)? {
        let path = dir.join(boundary_file_name(ind));
        write_boundary_csv(&pts, &path)?;
        written.push(path);
    }
    Ok(written)
}

/// `sweep.csv`, boundary curves, histograms and (if any point failed) the
/// error log.
pub fn write_sweep_outputs(report: &SweepReport, thresholds: &Thresholds, dir: &Path) -> Result<()> {
    ensure_dir(dir)?;
    write_csv(&report.rows, &dir.join(SWEEP_FILE))?;
    write_boundaries(&report.rows, thresholds, dir)?;
    for (name, h) in &report.histograms {
        h.write_json(&dir.join(name))?;
    }
    let errors = dir.join(ERRORS_FILE);
    if report.failures.is_empty() {
        if errors.exists() {
            std::fs::remove_file(&errors)?;
        }
    } else {
        write_errors_csv(&report.failures, &errors)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> ModelParams {
        ModelParams::default().with_spin(8, 40).unwrap()
    }

    #[test]
    fn grid_validation() {
        let mut cfg = SweepConfig::new(tiny(), vec![0.0, 0.5], vec![0.2]);
        assert!(cfg.validate().is_ok());
        cfg.lambda_grid = vec![0.3, 0.3];
        assert!(cfg.validate().is_err());
        cfg.lambda_grid = vec![];
        assert!(cfg.validate().is_err());
        cfg.lambda_grid = vec![0.1];
        cfg.workers = 0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn points_are_kappa_major() {
        let cfg = SweepConfig::new(tiny(), vec![0.0, 1.0], vec![0.1, 0.2, 0.3]);
        let p = cfg.points();
        assert_eq!(p[0], (0.0, 0.1));
        assert_eq!(p[2], (0.0, 0.3));
        assert_eq!(p[3], (1.0, 0.1));
    }

    #[test]
    fn failing_points_become_nan_rows() {
        // window far above the spectrum: every point fails with EmptyWindow
        let mut base = tiny();
        base.energy_window = crate::model::EnergyWindow::new(1e6, 2e6).unwrap();
        let mut cfg = SweepConfig::new(base, vec![0.0], vec![0.5, 1.0]);
        let dir = tempfile::tempdir().unwrap();
        cfg.output_dir = Some(dir.path().to_owned());
        let report = run_sweep(&cfg).unwrap();
        assert_eq!(report.rows.len(), 2);
        assert_eq!(report.failures.len(), 2);
        assert!(report.rows.iter().all(|r| r.eta.is_nan() && r.dim > 0));
        assert!(dir.path().join(ERRORS_FILE).exists());
        let back = read_csv(&dir.path().join(SWEEP_FILE)).unwrap();
        assert!(back.iter().zip(&report.rows).all(|(a, b)| a.same_bits(b)));
    }

    #[test]
    fn histogram_names() {
        assert_eq!(histogram_file_name("spacing", 0.3, 1.0), "hist_spacing_0.3_1.json");
        assert_eq!(boundary_file_name(Indicator::MeanR), "boundary_mean_r.csv");
    }
}
