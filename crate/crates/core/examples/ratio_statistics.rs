//! Mean spacing ratio ⟨r⟩ on raw eigenvalues, with and without the atom–atom
//! interaction.
//!
//! cargo run --release --example ratio_statistics

use dicke_chaos::pipeline::windowed_dataset;
use dicke_chaos::spectral_stats::{mean_ratio, spacing_ratios, MEAN_R_GOE, MEAN_R_POISSON};
use dicke_chaos::ModelParams;

fn main() -> dicke_chaos::Result<()> {
    let base = ModelParams::default().with_spin(24, 240)?;
    println!("references: Poisson {MEAN_R_POISSON:.4}, GOE {MEAN_R_GOE:.4}");
    println!("{:>6} {:>10} {:>10}", "lambda", "kappa=0", "kappa=1");
    for lambda in [0.1, 0.2, 0.3, 0.4, 0.5, 0.7, 1.0] {
        let mut row = format!("{lambda:>6}");
        for kappa in [0.0, 1.0] {
            let ds = windowed_dataset(&base.clone().with_coupling(lambda, kappa), false, None)?;
            let r = mean_ratio(&spacing_ratios(&ds.energies)?.ratios)?;
            row.push_str(&format!(" {r:>10.4}"));
        }
        println!("{row}");
    }
    Ok(())
}
