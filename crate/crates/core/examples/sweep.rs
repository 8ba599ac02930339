//! A small (κ, λ) sweep with boundary curves, written to `sweep-example/`.
//!
//! cargo run --release --example sweep

use std::path::PathBuf;

use dicke_chaos::sweep_io::boundaries;
use dicke_chaos::{run_sweep, ModelParams, SweepConfig};

fn main() -> dicke_chaos::Result<()> {
    let base = ModelParams::default().with_spin(16, 160)?;
    let kappas = vec![0.0, 0.5, 1.0];
    let lambdas: Vec<f64> = (1..=10).map(|k| f64::from(k) / 10.0).collect();
    let mut cfg = SweepConfig::new(base, kappas, lambdas);
    cfg.options.eigenstates = false;
    cfg.workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    cfg.output_dir = Some(PathBuf::from("sweep-example"));

    let report = run_sweep(&cfg)?;
    println!("{:>5} {:>6} {:>7} {:>7} {:>7}", "kappa", "lambda", "eta", "beta", "<r>");
    for r in &report.rows {
        println!(
            "{:>5} {:>6} {:>7.3} {:>7.3} {:>7.3}",
            r.kappa, r.lambda, r.eta, r.beta, r.mean_r
        );
    }
    for (indicator, curve) in boundaries(&report.rows, &cfg.thresholds)? {
        let pts: Vec<String> = curve
            .iter()
            .map(|p| format!("{}: {}", p.kappa, p.lambda_star.map_or("-".into(), |l| l.to_string())))
            .collect();
        println!("boundary {:<7} {}", indicator.name(), pts.join(", "));
    }
    println!("outputs in sweep-example/");
    Ok(())
}
