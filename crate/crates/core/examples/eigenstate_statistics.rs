//! Distribution of eigenvector components in the mid-spectrum window and its
//! KL divergence from the Gaussian of random GOE eigenvectors.
//!
//! cargo run --release --example eigenstate_statistics

use dicke_chaos::eigenstate_stats::{coefficient_histogram, collect_coefficients, kl_divergence_of, DEFAULT_BINS};
use dicke_chaos::pipeline::windowed_dataset;
use dicke_chaos::ModelParams;

fn main() -> dicke_chaos::Result<()> {
    let base = ModelParams::default().with_spin(20, 200)?;
    println!("{:>6} {:>7} {:>9} {:>9}", "lambda", "states", "var*D", "D_KL");
    for lambda in [0.1, 0.3, 0.5, 1.0] {
        let params = base.clone().with_coupling(lambda, 0.0);
        let ds = windowed_dataset(&params, true, None)?;
        let sample = collect_coefficients(&ds, &params.mid_window)?;
        let hist = coefficient_histogram(&sample, DEFAULT_BINS)?;
        let d_kl = kl_divergence_of(&hist, sample.dim);
        println!(
            "{lambda:>6} {:>7} {:>9.3} {d_kl:>9.4}",
            sample.n_states,
            sample.variance() * sample.dim as f64
        );
    }
    Ok(())
}
