//! Diagonalize one parameter point, restrict to the energy window and check
//! that the retained states are converged in the Fock cutoff.
//!
//! cargo run --release --example spectrum

use dicke_chaos::spectrum::{check_convergence, DEFAULT_TAIL_TOL, DEFAULT_TAIL_WIDTH};
use dicke_chaos::{build_hamiltonian, diagonalize, filter_energy_window, ModelParams, Parity};

fn main() -> dicke_chaos::Result<()> {
    let params = ModelParams::default().with_spin(20, 200)?.with_coupling(1.0, 0.0);
    let h = build_hamiltonian(&params, Parity::Even)?;
    let eig = diagonalize(&h, true)?;
    println!(
        "dimension {}, full spectrum [{:.3}, {:.3}]",
        eig.dim(),
        eig.energies[0],
        eig.energies[eig.dim() - 1]
    );

    let ds = filter_energy_window(eig, &params)?;
    let n = params.n_atoms() as f64;
    println!(
        "{} levels with E/N in [{}, {}], first E/N = {:.4}, last E/N = {:.4}",
        ds.energies.len(),
        params.energy_window.lo,
        params.energy_window.hi,
        ds.energies[0] / n,
        ds.energies[ds.energies.len() - 1] / n
    );

    let report = check_convergence(&ds, DEFAULT_TAIL_WIDTH, DEFAULT_TAIL_TOL)?;
    let worst = report.tail_weights.iter().copied().fold(0.0, f64::max);
    println!(
        "converged fraction {:.3} (largest weight on the top {DEFAULT_TAIL_WIDTH} Fock layers: {worst:.2e})",
        report.converged_fraction
    );
    Ok(())
}
