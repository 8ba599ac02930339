//! Synthetic spectra and samples from the reference ensembles.
//!
//! These drive calibration runs of the estimators against known limits.

use faer::Mat;
use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::error::Result;
use crate::model::HamiltonianMatrix;
use crate::spectral_stats::brody_b;
use crate::spectrum::diagonalize;

/// Independent spacings from the Brody law by inverting its CDF.
pub fn brody_spacings<R: Rng + ?Sized>(rng: &mut R, beta: f64, n: usize) -> Vec<f64> {
    let b = brody_b(beta);
    (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            (-(1.0 - u).ln() / b).powf(1.0 / (beta + 1.0))
        })
        .collect()
}

/// Spacings from the Wigner–Dyson surmise, `s = √(-4 ln(1-u) / π)`.
pub fn wigner_dyson_spacings<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            (-4.0 * (1.0 - u).ln() / std::f64::consts::PI).sqrt()
        })
        .collect()
}

/// Levels of a Poisson process with unit mean spacing.
pub fn poisson_levels<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let mut level = 0.0;
    (0..n)
        .map(|_| {
            let gap: f64 = rng.sample(Exp1);
            level += gap;
            level
        })
        .collect()
}

/// Real symmetric matrix from the Gaussian orthogonal ensemble
/// (off-diagonal variance 1/2, diagonal variance 1).
pub fn goe_matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Mat<f64> {
    let mut h = Mat::<f64>::zeros(dim, dim);
    for i in 0..dim {
        h[(i, i)] = rng.sample(StandardNormal);
        for k in 0..i {
            let x: f64 = rng.sample(StandardNormal);
            let v = x * std::f64::consts::FRAC_1_SQRT_2;
            h[(i, k)] = v;
            h[(k, i)] = v;
        }
    }
    h
}

/// Ascending eigenvalues of one GOE draw.
pub fn goe_eigenvalues<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<Vec<f64>> {
    let h = HamiltonianMatrix {
        basis: Vec::new(),
        entries: goe_matrix(rng, dim),
    };
    Ok(diagonalize(&h, false)?.energies)
}

/// Zero-mean Gaussian draws with the given variance.
pub fn gaussian_values<R: Rng + ?Sized>(rng: &mut R, n: usize, variance: f64) -> Vec<f64> {
    let sd = variance.sqrt();
    (0..n)
        .map(|_| {
            let z: f64 = rng.sample(StandardNormal);
            sd * z
        })
        .collect()
}
