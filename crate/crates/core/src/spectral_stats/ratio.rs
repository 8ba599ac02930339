//! Ratios of consecutive level spacings; no unfolding required.

use super::degeneracy_threshold;
use crate::error::{Error, Result};

/// `⟨r⟩` for uncorrelated levels, `2 ln 2 − 1`.
pub const MEAN_R_POISSON: f64 = 2.0 * std::f64::consts::LN_2 - 1.0;
/// `⟨r⟩` for the GOE surmise, `4 − 2√3`.
pub const MEAN_R_GOE: f64 = 0.535_898_384_862_245_4;

#[derive(Debug, Clone, PartialEq)]
pub struct RatioSample {
    /// `r_μ = min(δ_μ, 1/δ_μ)` with `δ_μ = s_{μ+1}/s_μ`.
    pub ratios: Vec<f64>,
    /// Adjacent pairs skipped because a spacing was degenerate.
    pub n_dropped: usize,
}

/// Spacing ratios of an ascending list of raw eigenvalues.
pub fn spacing_ratios(energies: &[f64]) -> Result<RatioSample> {
    if energies.len() < 3 {
        return Err(Error::TooFewLevels {
            needed: 3,
            got: energies.len(),
        });
    }
    if energies.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::NotAscending);
    }
    let spacings: Vec<f64> = energies.windows(2).map(|w| w[1] - w[0]).collect();
    let tol = degeneracy_threshold(&spacings);
    let mut ratios = Vec::with_capacity(spacings.len() - 1);
    let mut n_dropped = 0;
    for w in spacings.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a <= tol || b <= tol {
            n_dropped += 1;
            continue;
        }
        ratios.push(a.min(b) / a.max(b));
    }
    Ok(RatioSample { ratios, n_dropped })
}

/// GOE ratio density `(27/8) · 2(r + r²) / (1 + r + r²)^{5/2}` on `[0, 1]`.
pub fn goe_ratio_pdf(r: f64) -> f64 {
    if !(0.0..=1.0).contains(&r) {
        return 0.0;
    }
    27.0 / 8.0 * 2.0 * (r + r * r) / (1.0 + r + r * r).powf(2.5)
}

/// Poisson ratio density `2 / (1 + r)²` on `[0, 1]`.
pub fn poisson_ratio_pdf(r: f64) -> f64 {
    if !(0.0..=1.0).contains(&r) {
        return 0.0;
    }
    2.0 / ((1.0 + r) * (1.0 + r))
}

pub fn mean_ratio(ratios: &[f64]) -> Result<f64> {
    if ratios.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(ratios.iter().sum::<f64>() / ratios.len() as f64)
}
