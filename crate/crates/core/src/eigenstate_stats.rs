//! Statistics of eigenvector components in the Fock–Dicke basis and their
//! distance from the Gaussian law of GOE eigenvectors.

use libm::{erf, erfc};

use crate::error::{Error, Result};
use crate::histogram::{BinRange, Histogram};
use crate::model::EnergyWindow;
use crate::spectrum::SpectralDataset;

pub const DEFAULT_BINS: usize = 201;
pub const MIN_BINS: usize = 10;

/// Components of every eigenstate in a window, pooled into one sample.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSample {
    pub values: Vec<f64>,
    /// Sector dimension `D`.
    pub dim: usize,
    pub n_states: usize,
    pub c_min: f64,
    pub c_max: f64,
    /// Largest `|Σ_ν c² − 1|` over the pooled states.
    pub max_norm_deviation: f64,
}

impl CoefficientSample {
    pub fn from_values(values: Vec<f64>, dim: usize, n_states: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        let c_min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let c_max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(CoefficientSample {
            values,
            dim,
            n_states,
            c_min,
            c_max,
            max_norm_deviation: 0.0,
        })
    }

    pub fn variance(&self) -> f64 {
        let n = self.values.len() as f64;
        let mean = self.values.iter().sum::<f64>() / n;
        self.values.iter().map(|c| (c - mean) * (c - mean)).sum::<f64>() / n
    }
}

/// Pool the components of all retained eigenstates with `E/N` in `window`.
pub fn collect_coefficients(ds: &SpectralDataset, window: &EnergyWindow) -> Result<CoefficientSample> {
    let c = ds.coefficients.as_ref().ok_or(Error::MissingVectors)?;
    let n_atoms = ds.n_atoms();
    let states: Vec<usize> = ds
        .energies
        .iter()
        .enumerate()
        .filter(|(_, &e)| window.contains(e, n_atoms))
        .map(|(k, _)| k)
        .collect();
    if states.is_empty() {
        return Err(Error::EmptyWindow {
            lo: window.lo,
            hi: window.hi,
        });
    }
    let dim = c.nrows();
    let mut values = Vec::with_capacity(dim * states.len());
    let mut max_dev = 0.0f64;
    for &k in &states {
        let col = c.col(k);
        let mut norm = 0.0;
        for i in 0..dim {
            let v = col[i];
            norm += v * v;
            values.push(v);
        }
        max_dev = max_dev.max((norm - 1.0).abs());
    }
    let mut sample = CoefficientSample::from_values(values, dim, states.len())?;
    sample.max_norm_deviation = max_dev;
    Ok(sample)
}

/// `√(D/2π) e^{-Dc²/2}`: Gaussian with zero mean and variance `1/D`.
pub fn goe_coefficient_pdf(c: f64, dim: usize) -> f64 {
    let d = dim as f64;
    (d / (2.0 * std::f64::consts::PI)).sqrt() * (-d * c * c / 2.0).exp()
}

/// Mass of [`goe_coefficient_pdf`] on `[a, b]`, accurate in the far tails.
pub fn goe_bin_mass(a: f64, b: f64, dim: usize) -> f64 {
    let k = (dim as f64 / 2.0).sqrt();
    let mass = if a >= 0.0 {
        0.5 * (erfc(a * k) - erfc(b * k))
    } else if b <= 0.0 {
        0.5 * (erfc(-b * k) - erfc(-a * k))
    } else {
        0.5 * (erf(b * k) - erf(a * k))
    };
    mass.max(0.0)
}

/// `Σ p_i ln(p_i / q_i)`, with terms where `p_i = 0` contributing nothing.
pub fn discrete_kl(p: &[f64], q: &[f64]) -> f64 {
    p.iter()
        .zip(q)
        .filter(|(&pi, _)| pi > 0.0)
        .map(|(&pi, &qi)| pi * (pi / qi).ln())
        .sum()
}

/// Histogram of the pooled sample on `[c_min, c_max]`.
pub fn coefficient_histogram(sample: &CoefficientSample, bins: usize) -> Result<Histogram> {
    if sample.values.is_empty() {
        return Err(Error::EmptySample);
    }
    if bins < MIN_BINS {
        return Err(Error::InvalidParams(format!(
            "need at least {MIN_BINS} bins, got {bins}"
        )));
    }
    let range = sample.c_max - sample.c_min;
    if !(range >= 1e-12) {
        return Err(Error::DegenerateRange(range));
    }
    Histogram::from_values(&sample.values, BinRange::new(sample.c_min, sample.c_max, bins)?)
}

/// KL divergence of a binned coefficient distribution from the GOE Gaussian,
/// with the reference integrated exactly over each bin.
pub fn kl_divergence_of(hist: &Histogram, dim: usize) -> f64 {
    let q: Vec<f64> = hist.edges.windows(2).map(|e| goe_bin_mass(e[0], e[1], dim)).collect();
    discrete_kl(&hist.masses(), &q)
}

/// `D_KL` between the pooled coefficient distribution and the GOE reference.
pub fn kl_divergence(sample: &CoefficientSample, bins: usize) -> Result<f64> {
    let hist = coefficient_histogram(sample, bins)?;
    Ok(kl_divergence_of(&hist, sample.dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gaussian_reference() {
        assert_relative_eq!(goe_coefficient_pdf(0.0, 100), 3.989_42, epsilon = 1e-5);
        for c in [0.01, 0.1, 0.3] {
            assert_eq!(goe_coefficient_pdf(c, 50), goe_coefficient_pdf(-c, 50));
        }
        assert_relative_eq!(goe_bin_mass(-10.0, 10.0, 7), 1.0, epsilon = 1e-15);
        assert_relative_eq!(goe_bin_mass(0.0, 10.0, 7), 0.5, epsilon = 1e-15);
        // far tail is not lost to cancellation
        assert!(goe_bin_mass(0.5, 0.6, 400) > 0.0);
    }

    #[test]
    fn discrete_kl_properties() {
        let p = [0.2, 0.3, 0.5];
        assert_eq!(discrete_kl(&p, &p), 0.0);
        assert!(discrete_kl(&p, &[0.3, 0.3, 0.4]) > 0.0);
        assert_eq!(discrete_kl(&[0.0, 1.0], &[0.5, 0.5]), 2f64.ln());
    }

    #[test]
    fn errors() {
        assert!(matches!(
            CoefficientSample::from_values(vec![], 3, 0),
            Err(Error::EmptySample)
        ));
        let s = CoefficientSample::from_values(vec![0.5; 10], 4, 1).unwrap();
        assert!(matches!(kl_divergence(&s, 20), Err(Error::DegenerateRange(_))));
        let s = CoefficientSample::from_values(vec![0.5, -0.5], 4, 1).unwrap();
        assert!(kl_divergence(&s, 5).is_err());
        assert!(kl_divergence(&s, 10).unwrap() >= 0.0);
    }
}
