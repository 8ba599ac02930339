//! Nearest-neighbour spacing distribution: reference laws, the Brody family,
//! and the η and β indicators.

use std::f64::consts::PI;
use std::sync::OnceLock;

use libm::tgamma as gamma;

use super::{split_degenerate, MIN_SPACINGS};
use crate::error::{Error, Result};

/// Uncorrelated levels: `e^{-s}`.
pub fn poisson_pdf(s: f64) -> f64 {
    (-s).exp()
}

/// GOE surmise: `(πs/2) e^{-πs²/4}`.
pub fn wigner_dyson_pdf(s: f64) -> f64 {
    PI * s / 2.0 * (-PI * s * s / 4.0).exp()
}

/// `b_β = Γ((β+2)/(β+1))^{β+1}`, which fixes the Brody mean at 1.
pub fn brody_b(beta: f64) -> f64 {
    gamma((beta + 2.0) / (beta + 1.0)).powf(beta + 1.0)
}

pub fn brody_pdf(s: f64, beta: f64) -> f64 {
    let b = brody_b(beta);
    b * (beta + 1.0) * s.powf(beta) * (-b * s.powf(beta + 1.0)).exp()
}

pub fn brody_cdf(s: f64, beta: f64) -> f64 {
    1.0 - (-brody_b(beta) * s.powf(beta + 1.0)).exp()
}

/// First positive crossing of the Poisson and Wigner–Dyson densities
/// (≈ 0.4729), refined by Newton's method on first use.
pub fn s0() -> f64 {
    static S0: OnceLock<f64> = OnceLock::new();
    *S0.get_or_init(|| {
        let f = |s: f64| poisson_pdf(s) - wigner_dyson_pdf(s);
        let df = |s: f64| -(-s).exp() - PI / 2.0 * (-PI * s * s / 4.0).exp() * (1.0 - PI * s * s / 2.0);
        let mut s = 0.4729;
        for _ in 0..50 {
            let step = f(s) / df(s);
            s -= step;
            if step.abs() < 1e-17 {
                break;
            }
        }
        s
    })
}

/// `∫₀^{s₀} [P_P − P_WD] ds = e^{-πs₀²/4} − e^{-s₀}`.
pub fn eta_denominator() -> f64 {
    let s0 = s0();
    (-PI * s0 * s0 / 4.0).exp() - (-s0).exp()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaEstimate {
    /// `|num/den|` clipped to `[0, 1]`.
    pub eta: f64,
    pub unclipped: f64,
    pub n_used: usize,
    pub n_degenerate: usize,
}

/// η indicator from the empirical distribution function at `s₀`.
///
/// 0 for Wigner–Dyson statistics, 1 for Poisson.
pub fn eta_indicator(spacings: &[f64]) -> Result<EtaEstimate> {
    if spacings.len() < MIN_SPACINGS {
        return Err(Error::TooFewSpacings {
            needed: MIN_SPACINGS,
            got: spacings.len(),
        });
    }
    let (used, n_degenerate) = split_degenerate(spacings);
    if used.is_empty() {
        return Err(Error::AllDegenerate(n_degenerate));
    }
    let s0 = s0();
    let below = used.iter().filter(|&&s| s <= s0).count() as f64 / used.len() as f64;
    let wd_mass = 1.0 - (-PI * s0 * s0 / 4.0).exp();
    let unclipped = ((below - wd_mass) / eta_denominator()).abs();
    Ok(EtaEstimate {
        eta: unclipped.clamp(0.0, 1.0),
        unclipped,
        n_used: used.len(),
        n_degenerate,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrodyFit {
    pub beta: f64,
    pub log_likelihood: f64,
    pub n_used: usize,
    pub n_degenerate: usize,
}

/// Brody log-likelihood of `spacings` (which must all be positive).
pub fn brody_log_likelihood(spacings: &[f64], beta: f64) -> f64 {
    let b = brody_b(beta);
    let n = spacings.len() as f64;
    let mut sum_log = 0.0;
    let mut sum_pow = 0.0;
    for &s in spacings {
        let ln_s = s.ln();
        sum_log += ln_s;
        sum_pow += ((beta + 1.0) * ln_s).exp();
    }
    n * (b * (beta + 1.0)).ln() + beta * sum_log - b * sum_pow
}

/// Maximum-likelihood Brody exponent on `[0, 1]`, by golden-section search.
pub fn fit_brody(spacings: &[f64]) -> Result<BrodyFit> {
    const TOL: f64 = 1e-4;
    if spacings.len() < MIN_SPACINGS {
        return Err(Error::TooFewSpacings {
            needed: MIN_SPACINGS,
            got: spacings.len(),
        });
    }
    let (used, n_degenerate) = split_degenerate(spacings);
    if used.is_empty() {
        return Err(Error::AllDegenerate(n_degenerate));
    }
    let ll = |beta: f64| brody_log_likelihood(&used, beta);

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (0.0f64, 1.0f64);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (ll(c), ll(d));
    while b - a > TOL {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = ll(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = ll(d);
        }
    }
    // The optimum may sit on the boundary of the admissible range.
    let mid = (a + b) / 2.0;
    let (beta, log_likelihood) = [(mid, ll(mid)), (0.0, ll(0.0)), (1.0, ll(1.0))].into_iter().fold(
        (f64::NAN, f64::NEG_INFINITY),
        |best, cand| {
            if cand.1 > best.1 {
                cand
            } else {
                best
            }
        },
    );
    Ok(BrodyFit {
        beta,
        log_likelihood,
        n_used: used.len(),
        n_degenerate,
    })
}
