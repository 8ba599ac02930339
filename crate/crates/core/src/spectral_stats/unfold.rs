use faer::linalg::solvers::SolveLstsq;
use faer::Mat;

use crate::error::{Error, Result};

pub const DEFAULT_FIT_DEGREE: usize = 10;

/// Levels mapped onto unit mean density.
#[derive(Debug, Clone, PartialEq)]
pub struct UnfoldedSpectrum {
    pub levels: Vec<f64>,
    pub spacings: Vec<f64>,
    pub fit_degree: usize,
}

impl UnfoldedSpectrum {
    pub fn mean_spacing(&self) -> f64 {
        self.spacings.iter().sum::<f64>() / self.spacings.len() as f64
    }
}

/// Unfold an ascending spectrum by a least-squares polynomial fit of its
/// cumulative counting function `N(E) = #{k : E_k ≤ E}`.
///
/// The polynomial is expanded in Chebyshev polynomials of the energy rescaled
/// to `[-1, 1]`, which keeps the fit well conditioned and makes the result
/// invariant under affine maps of the input.
pub fn unfold(energies: &[f64], fit_degree: usize) -> Result<UnfoldedSpectrum> {
    let n = energies.len();
    let needed = fit_degree + 10;
    if n < needed {
        return Err(Error::TooFewLevels { needed, got: n });
    }
    if energies.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::NotAscending);
    }
    let (lo, hi) = (energies[0], energies[n - 1]);
    let width = hi - lo;
    if !(width > 0.0 && width.is_finite()) {
        return Err(Error::DegenerateFit);
    }
    let x: Vec<f64> = energies.iter().map(|&e| 2.0 * (e - lo) / width - 1.0).collect();

    // Counting function: ties all take the count of the last member.
    let mut counts = vec![0.0; n];
    let mut k = 0;
    while k < n {
        let mut end = k;
        while end + 1 < n && energies[end + 1] == energies[k] {
            end += 1;
        }
        for c in &mut counts[k..=end] {
            *c = (end + 1) as f64;
        }
        k = end + 1;
    }

    let cols = fit_degree + 1;
    let design = Mat::from_fn(n, cols, |i, d| chebyshev(d, x[i]));
    let qr = design.qr();
    let r = qr.thin_R();
    let diag_max = (0..cols).map(|d| r[(d, d)].abs()).fold(0.0, f64::max);
    if (0..cols).any(|d| r[(d, d)].abs() <= 1e-10 * diag_max) {
        return Err(Error::DegenerateFit);
    }
    let rhs = Mat::from_fn(n, 1, |i, _| counts[i]);
    let coef = qr.solve_lstsq(&rhs);
    let coef: Vec<f64> = (0..cols).map(|d| coef[(d, 0)]).collect();

    let mut levels: Vec<f64> = x.iter().map(|&xi| chebyshev_sum(&coef, xi)).collect();
    if levels.windows(2).any(|w| w[1] < w[0]) {
        levels.sort_by(f64::total_cmp);
    }
    let spacings = levels.windows(2).map(|w| w[1] - w[0]).collect();
    Ok(UnfoldedSpectrum {
        levels,
        spacings,
        fit_degree,
    })
}

fn chebyshev(degree: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    match degree {
        0 => prev,
        _ => {
            for _ in 1..degree {
                let next = 2.0 * x * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Clenshaw evaluation of `Σ c_d T_d(x)`.
fn chebyshev_sum(coef: &[f64], x: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &c in coef.iter().skip(1).rev() {
        let b0 = 2.0 * x * b1 - b2 + c;
        b2 = b1;
        b1 = b0;
    }
    coef[0] + x * b1 - b2
}
