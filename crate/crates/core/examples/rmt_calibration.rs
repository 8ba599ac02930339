//! Calibrate the estimators on random-matrix and Poisson spectra, where the
//! answers are known.
//!
//! cargo run --release --example rmt_calibration

use dicke_chaos::pipeline::spectral_summary;
use dicke_chaos::sampling::{goe_eigenvalues, poisson_levels};
use dicke_chaos::spectral_stats::{eta_indicator, fit_brody, mean_ratio, spacing_ratios, unfold};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dicke_chaos::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut ratios, mut spacings) = (Vec::new(), Vec::new());
    for _ in 0..5 {
        let e = goe_eigenvalues(&mut rng, 1000)?;
        ratios.extend(spacing_ratios(&e)?.ratios);
        spacings.extend(unfold(&e[100..900], 10)?.spacings);
    }
    println!(
        "GOE (5 x 1000):     <r> = {:.4}  eta = {:.4}  beta = {:.4}",
        mean_ratio(&ratios)?,
        eta_indicator(&spacings)?.eta,
        fit_brody(&spacings)?.beta
    );

    let s = spectral_summary(&poisson_levels(&mut rng, 50_000), 10)?;
    println!(
        "Poisson (50000):    <r> = {:.4}  eta = {:.4}  beta = {:.4}",
        s.mean_r, s.eta.eta, s.brody.beta
    );
    Ok(())
}
