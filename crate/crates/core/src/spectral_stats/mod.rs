//! Eigenvalue-based chaos diagnostics.

mod boundary;
mod ratio;
mod spacing;
mod unfold;

use serde::{Deserialize, Serialize};

pub use boundary::{chaos_boundary, BoundaryPoint, GridValue, Indicator};
pub use ratio::{
    goe_ratio_pdf, mean_ratio, poisson_ratio_pdf, spacing_ratios, RatioSample, MEAN_R_GOE, MEAN_R_POISSON,
};
pub use spacing::{
    brody_b, brody_cdf, brody_log_likelihood, brody_pdf, eta_denominator, eta_indicator, fit_brody, poisson_pdf, s0,
    wigner_dyson_pdf, BrodyFit, EtaEstimate,
};
pub use unfold::{unfold, UnfoldedSpectrum, DEFAULT_FIT_DEGREE};

/// Spacings at or below this fraction of the mean spacing count as exact degeneracies.
pub const DEGENERACY_TOL: f64 = 1e-10;

/// Minimum number of spacings for η and the Brody fit.
pub const MIN_SPACINGS: usize = 100;

/// Absolute degeneracy cutoff for a list of spacings.
pub fn degeneracy_threshold(spacings: &[f64]) -> f64 {
    if spacings.is_empty() {
        return 0.0;
    }
    DEGENERACY_TOL * spacings.iter().sum::<f64>() / spacings.len() as f64
}

/// Number of spacings that fall under the degeneracy cutoff.
pub fn count_degenerate(spacings: &[f64]) -> usize {
    let tol = degeneracy_threshold(spacings);
    spacings.iter().filter(|&&s| s <= tol).count()
}

pub(crate) fn split_degenerate(spacings: &[f64]) -> (Vec<f64>, usize) {
    let tol = degeneracy_threshold(spacings);
    let used: Vec<f64> = spacings.iter().copied().filter(|&s| s > tol).collect();
    let dropped = spacings.len() - used.len();
    (used, dropped)
}

/// All indicators for one `(κ, λ)` point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChaosIndicators {
    pub eta: f64,
    pub beta: f64,
    pub mean_r: f64,
    /// Absent when eigenvectors were not computed.
    pub d_kl: Option<f64>,
    pub n_levels: usize,
    pub converged_fraction: Option<f64>,
}

impl ChaosIndicators {
    pub fn get(&self, indicator: Indicator) -> f64 {
        match indicator {
            Indicator::Eta => self.eta,
            Indicator::Beta => self.beta,
            Indicator::MeanR => self.mean_r,
        }
    }
}
