//! Single-point pipeline: build, diagonalize, window, and compute every indicator.

use serde::{Deserialize, Serialize};

use crate::cache::SpectrumCache;
use crate::eigenstate_stats::{coefficient_histogram, collect_coefficients, kl_divergence_of, DEFAULT_BINS};
use crate::error::Result;
use crate::histogram::{BinRange, Histogram};
use crate::model::{build_hamiltonian, ModelParams, Parity};
use crate::spectral_stats::{
    count_degenerate, eta_indicator, fit_brody, mean_ratio, spacing_ratios, unfold, BrodyFit, ChaosIndicators,
    EtaEstimate, RatioSample, UnfoldedSpectrum, DEFAULT_FIT_DEGREE,
};
use crate::spectrum::{
    check_convergence, diagonalize, filter_energy_window, ConvergenceReport, Eigendecomposition, SpectralDataset,
    DEFAULT_TAIL_TOL, DEFAULT_TAIL_WIDTH,
};

/// The analysed sector. Only the even sector is used for physics runs.
pub const SECTOR: Parity = Parity::Even;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalysisOptions {
    pub fit_degree: usize,
    /// Bins of the coefficient histogram used for `D_KL`.
    pub bins: usize,
    /// Compute eigenvectors, `D_KL` and cutoff convergence.
    pub eigenstates: bool,
    pub tail_width: u32,
    pub tail_tol: f64,
    pub spacing_hist: BinRange,
    pub ratio_hist: BinRange,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            fit_degree: DEFAULT_FIT_DEGREE,
            bins: DEFAULT_BINS,
            eigenstates: true,
            tail_width: DEFAULT_TAIL_WIDTH,
            tail_tol: DEFAULT_TAIL_TOL,
            spacing_hist: BinRange {
                lo: 0.0,
                hi: 5.0,
                bins: 50,
            },
            ratio_hist: BinRange {
                lo: 0.0,
                hi: 1.0,
                bins: 50,
            },
        }
    }
}

/// Eigenvalue-based statistics of one spectrum.
#[derive(Debug, Clone)]
pub struct SpectralSummary {
    pub n_levels: usize,
    /// Raw nearest-neighbour spacings below the degeneracy cutoff.
    pub n_degenerate: usize,
    pub unfolded: UnfoldedSpectrum,
    pub eta: EtaEstimate,
    pub brody: BrodyFit,
    pub ratios: RatioSample,
    pub mean_r: f64,
}

/// η, β and ⟨r⟩ of an ascending list of levels.
pub fn spectral_summary(energies: &[f64], fit_degree: usize) -> Result<SpectralSummary> {
    let raw: Vec<f64> = energies.windows(2).map(|w| w[1] - w[0]).collect();
    let unfolded = unfold(energies, fit_degree)?;
    let eta = eta_indicator(&unfolded.spacings)?;
    let brody = fit_brody(&unfolded.spacings)?;
    let ratios = spacing_ratios(energies)?;
    let mean_r = mean_ratio(&ratios.ratios)?;
    Ok(SpectralSummary {
        n_levels: energies.len(),
        n_degenerate: count_degenerate(&raw),
        unfolded,
        eta,
        brody,
        ratios,
        mean_r,
    })
}

/// Diagonalize the even sector and restrict to the energy window. Without
/// eigenvectors the full spectrum is read from / written to `cache`.
pub fn windowed_dataset(
    params: &ModelParams,
    want_vectors: bool,
    cache: Option<&SpectrumCache>,
) -> Result<SpectralDataset> {
    params.validate()?;
    if !want_vectors {
        if let Some(energies) = cache.and_then(|c| c.load(params, SECTOR)) {
            let eig = Eigendecomposition {
                basis: crate::model::enumerate_basis(params, SECTOR),
                energies,
                vectors: None,
            };
            return filter_energy_window(eig, params);
        }
    }
    let h = build_hamiltonian(params, SECTOR)?;
    let eig = diagonalize(&h, want_vectors)?;
    drop(h);
    if !want_vectors {
        if let Some(c) = cache {
            c.store(params, SECTOR, &eig.energies)?;
        }
    }
    filter_energy_window(eig, params)
}

/// Everything computed at one `(κ, λ)` point.
#[derive(Debug, Clone)]
pub struct PointAnalysis {
    pub params: ModelParams,
    pub dim: usize,
    pub energies: Vec<f64>,
    pub summary: SpectralSummary,
    pub convergence: Option<ConvergenceReport>,
    pub coefficient_hist: Option<Histogram>,
    pub indicators: ChaosIndicators,
}

impl PointAnalysis {
    pub fn spacing_histogram(&self, range: BinRange) -> Result<Histogram> {
        Ok(Histogram::from_values(&self.summary.unfolded.spacings, range)?
            .with_meta("kind", "spacing")
            .with_meta("kappa", self.params.kappa)
            .with_meta("lambda", self.params.lambda)
            .with_meta("eta", self.indicators.eta)
            .with_meta("beta", self.indicators.beta)
            .with_meta("n_levels", self.summary.n_levels)
            .with_meta("n_degenerate_dropped", self.summary.eta.n_degenerate)
            .with_meta("fit_degree", self.summary.unfolded.fit_degree))
    }

    pub fn ratio_histogram(&self, range: BinRange) -> Result<Histogram> {
        Ok(Histogram::from_values(&self.summary.ratios.ratios, range)?
            .with_meta("kind", "ratio")
            .with_meta("kappa", self.params.kappa)
            .with_meta("lambda", self.params.lambda)
            .with_meta("mean_r", self.indicators.mean_r)
            .with_meta("n_levels", self.summary.n_levels)
            .with_meta("n_degenerate_dropped", self.summary.ratios.n_dropped))
    }
}

/// Run the full pipeline at one parameter point.
pub fn analyze_point(
    params: &ModelParams,
    opts: &AnalysisOptions,
    cache: Option<&SpectrumCache>,
) -> Result<PointAnalysis> {
    let mut ds = windowed_dataset(params, opts.eigenstates, cache)?;
    let summary = spectral_summary(&ds.energies, opts.fit_degree)?;

    let (convergence, coefficient_hist, d_kl) = if opts.eigenstates {
        let report = check_convergence(&ds, opts.tail_width, opts.tail_tol)?;
        ds.converged = Some(report.flags.clone());
        let sample = collect_coefficients(&ds, &params.mid_window)?;
        let hist = coefficient_histogram(&sample, opts.bins)?;
        let d_kl = kl_divergence_of(&hist, sample.dim);
        let hist = hist
            .with_meta("kind", "coefficient")
            .with_meta("kappa", params.kappa)
            .with_meta("lambda", params.lambda)
            .with_meta("d_kl", d_kl)
            .with_meta("dim", sample.dim)
            .with_meta("n_states", sample.n_states)
            .with_meta("c_min", sample.c_min)
            .with_meta("c_max", sample.c_max);
        (Some(report), Some(hist), Some(d_kl))
    } else {
        (None, None, None)
    };

    let indicators = ChaosIndicators {
        eta: summary.eta.eta,
        beta: summary.brody.beta,
        mean_r: summary.mean_r,
        d_kl,
        n_levels: summary.n_levels,
        converged_fraction: convergence.as_ref().map(|r| r.converged_fraction),
    };
    Ok(PointAnalysis {
        params: params.clone(),
        dim: ds.dim(),
        energies: ds.energies,
        summary,
        convergence,
        coefficient_hist,
        indicators,
    })
}
