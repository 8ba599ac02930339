//! Build the even-parity Hamiltonian and inspect its structure.
//!
//! cargo run --example hamiltonian

use dicke_chaos::model::{build_full_hamiltonian, enumerate_basis, hamiltonian_element};
use dicke_chaos::{build_hamiltonian, ModelParams, Parity};

fn main() -> dicke_chaos::Result<()> {
    let params = ModelParams::default().with_coupling(1.0, 0.5);
    for sector in [Parity::Even, Parity::Odd] {
        println!(
            "{sector:?} sector dimension at j = {}, Nc = {}: {}",
            params.j,
            params.n_cutoff,
            enumerate_basis(&params, sector).len()
        );
    }

    let small = ModelParams::default().with_spin(3, 4)?.with_coupling(0.8, 0.3);
    let h = build_hamiltonian(&small, Parity::Even)?;
    println!("\nj = 3/2, Nc = 4, even sector ({} states):", h.dim());
    for (i, s) in h.basis.iter().enumerate() {
        let row: Vec<String> = (0..h.dim()).map(|k| format!("{:7.3}", h.entries[(i, k)])).collect();
        println!("  n={} m={:+.1} | {}", s.n, s.m(), row.join(" "));
    }

    let full = build_full_hamiltonian(&small, 1000)?;
    let leaks = full
        .basis
        .iter()
        .flat_map(|a| full.basis.iter().map(move |b| (a, b)))
        .filter(|(a, b)| a.parity != b.parity && hamiltonian_element(&small, a, b) != 0.0)
        .count();
    println!("\nnonzero elements between parity sectors in the full basis: {leaks}");
    Ok(())
}
