//! Unfolded nearest-neighbour spacings: the η indicator and the Brody exponent
//! across the integrable-to-chaotic crossover.
//!
//! cargo run --release --example spacing_statistics

use dicke_chaos::pipeline::{spectral_summary, windowed_dataset};
use dicke_chaos::spectral_stats::DEFAULT_FIT_DEGREE;
use dicke_chaos::{BinRange, Histogram, ModelParams};

fn main() -> dicke_chaos::Result<()> {
    let base = ModelParams::default().with_spin(24, 240)?;
    println!("{:>6} {:>7} {:>7} {:>7}", "lambda", "levels", "eta", "beta");
    for lambda in [0.1, 0.3, 0.5, 0.7, 1.0] {
        let params = base.clone().with_coupling(lambda, 0.0);
        let ds = windowed_dataset(&params, false, None)?;
        let s = spectral_summary(&ds.energies, DEFAULT_FIT_DEGREE)?;
        println!("{lambda:>6} {:>7} {:>7.3} {:>7.3}", s.n_levels, s.eta.eta, s.brody.beta);
        if lambda == 1.0 {
            let h = Histogram::from_values(&s.unfolded.spacings, BinRange::new(0.0, 3.0, 12)?)?;
            println!("\nP(s) at lambda = 1:");
            for (c, d) in h.centers().iter().zip(&h.densities) {
                println!("  {c:4.2} {d:5.3} {}", "#".repeat((d * 40.0) as usize));
            }
        }
    }
    Ok(())
}
