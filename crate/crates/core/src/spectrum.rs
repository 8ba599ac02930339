//! Dense diagonalization, energy-window filtering and Fock-cutoff diagnostics.

use faer::{Mat, Side};

use crate::error::{Error, Result};
use crate::model::{BasisState, HamiltonianMatrix, ModelParams};

/// Number of top Fock layers inspected by the default convergence check.
pub const DEFAULT_TAIL_WIDTH: u32 = 20;
/// Tail weight below which a state counts as converged.
pub const DEFAULT_TAIL_TOL: f64 = 1e-6;

/// Complete eigendecomposition of one Hamiltonian.
#[derive(Debug, Clone)]
pub struct Eigendecomposition {
    pub basis: Vec<BasisState>,
    /// All eigenvalues, ascending; exact ties keep the solver's order.
    pub energies: Vec<f64>,
    /// Column `k` is the phase-fixed eigenvector of `energies[k]`.
    pub vectors: Option<Mat<f64>>,
}

impl Eigendecomposition {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Diagonalize `h`, optionally keeping eigenvectors.
///
/// Eigenvectors have their largest-magnitude component made positive (first
/// such component on ties), so repeated runs produce identical coefficients.
pub fn diagonalize(h: &HamiltonianMatrix, want_vectors: bool) -> Result<Eigendecomposition> {
    let (mut energies, vectors) = if want_vectors {
        let evd = h
            .entries
            .self_adjoint_eigen(Side::Lower)
            .map_err(|_| Error::ConvergenceFailure)?;
        let s = evd.S().column_vector();
        let energies: Vec<f64> = (0..h.dim()).map(|i| s[i]).collect();
        (energies, Some(evd.U().to_owned()))
    } else {
        let energies = h
            .entries
            .self_adjoint_eigenvalues(Side::Lower)
            .map_err(|_| Error::ConvergenceFailure)?;
        (energies, None)
    };
    if energies.iter().any(|e| !e.is_finite()) {
        return Err(Error::ConvergenceFailure);
    }

    // The solver already returns ascending values; a stable sort on the
    // original index is a no-op unless it ever does not.
    let mut order: Vec<usize> = (0..energies.len()).collect();
    order.sort_by(|&a, &b| energies[a].total_cmp(&energies[b]).then(a.cmp(&b)));
    let sorted = order.windows(2).all(|w| w[0] < w[1]);
    let vectors = vectors.map(|u| {
        let mut u = if sorted {
            u
        } else {
            Mat::from_fn(u.nrows(), u.ncols(), |i, k| u[(i, order[k])])
        };
        fix_phases(&mut u);
        u
    });
    if !sorted {
        energies = order.iter().map(|&k| energies[k]).collect();
    }

    Ok(Eigendecomposition {
        basis: h.basis.clone(),
        energies,
        vectors,
    })
}

/// Flip each column so its largest-magnitude entry is positive.
pub fn fix_phases(u: &mut Mat<f64>) {
    for k in 0..u.ncols() {
        let mut best = 0;
        let mut best_abs = -1.0;
        for i in 0..u.nrows() {
            let a = u[(i, k)].abs();
            if a > best_abs {
                best_abs = a;
                best = i;
            }
        }
        if u.nrows() > 0 && u[(best, k)] < 0.0 {
            for i in 0..u.nrows() {
                u[(i, k)] = -u[(i, k)];
            }
        }
    }
}

/// Eigenpairs restricted to the analysis window.
#[derive(Debug, Clone)]
pub struct SpectralDataset {
    pub params: ModelParams,
    pub basis: Vec<BasisState>,
    /// Retained energies, ascending.
    pub energies: Vec<f64>,
    /// `coefficients[(ν, k)] = c_k^ν` for retained state `k`, when vectors were computed.
    pub coefficients: Option<Mat<f64>>,
    /// Position of each retained state in the full spectrum.
    pub window_indices: Vec<usize>,
    /// Per-state cutoff convergence, once [`check_convergence`] has run.
    pub converged: Option<Vec<bool>>,
}

impl SpectralDataset {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn n_atoms(&self) -> f64 {
        f64::from(self.params.n_atoms())
    }

    pub fn converged_fraction(&self) -> Option<f64> {
        self.converged.as_ref().map(|flags| fraction(flags))
    }
}

fn fraction(flags: &[bool]) -> f64 {
    if flags.is_empty() {
        return 0.0;
    }
    flags.iter().filter(|&&f| f).count() as f64 / flags.len() as f64
}

/// Keep the states with `E/N` inside `params.energy_window` (closed interval).
pub fn filter_energy_window(eig: Eigendecomposition, params: &ModelParams) -> Result<SpectralDataset> {
    let window = params.energy_window;
    let n_atoms = f64::from(params.n_atoms());
    let window_indices: Vec<usize> = eig
        .energies
        .iter()
        .enumerate()
        .filter(|(_, &e)| window.contains(e, n_atoms))
        .map(|(k, _)| k)
        .collect();
    if window_indices.is_empty() {
        return Err(Error::EmptyWindow {
            lo: window.lo,
            hi: window.hi,
        });
    }
    let energies = window_indices.iter().map(|&k| eig.energies[k]).collect();
    let coefficients = eig
        .vectors
        .map(|u| Mat::from_fn(u.nrows(), window_indices.len(), |i, c| u[(i, window_indices[c])]));
    Ok(SpectralDataset {
        params: params.clone(),
        basis: eig.basis,
        energies,
        coefficients,
        window_indices,
        converged: None,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub flags: Vec<bool>,
    /// Weight of each retained state on the top `tail_width` Fock layers.
    pub tail_weights: Vec<f64>,
    pub converged_fraction: f64,
}

/// Flag states whose weight on Fock layers `n ≥ N_c − tail_width` is below `tol`.
pub fn check_convergence(ds: &SpectralDataset, tail_width: u32, tol: f64) -> Result<ConvergenceReport> {
    let c = ds.coefficients.as_ref().ok_or(Error::MissingVectors)?;
    let first_tail = ds.params.n_cutoff.saturating_sub(tail_width);
    let tail_rows: Vec<usize> = ds
        .basis
        .iter()
        .enumerate()
        .filter(|(_, s)| s.n >= first_tail)
        .map(|(i, _)| i)
        .collect();
    let tail_weights: Vec<f64> = (0..c.ncols())
        .map(|k| tail_rows.iter().map(|&i| c[(i, k)] * c[(i, k)]).sum())
        .collect();
    let flags: Vec<bool> = tail_weights.iter().map(|&w| w < tol).collect();
    Ok(ConvergenceReport {
        converged_fraction: fraction(&flags),
        flags,
        tail_weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_hamiltonian, Parity};
    use approx::assert_relative_eq;

    fn small(lambda: f64, kappa: f64) -> ModelParams {
        ModelParams::default()
            .with_spin(6, 30)
            .unwrap()
            .with_coupling(lambda, kappa)
    }

    #[test]
    fn spin_half_two_level_block() {
        // j = 1/2, N_c = 1, even sector = {(0, -1/2), (1, +1/2)}
        let (w, w0, lam, kap) = (1.3, 0.7, 0.45, 0.2);
        let mut p = ModelParams::default().with_spin(1, 1).unwrap().with_coupling(lam, kap);
        p.omega = w;
        p.omega0 = w0;
        let eig = diagonalize(&build_hamiltonian(&p, Parity::Even).unwrap(), false).unwrap();
        let a = -w0 / 2.0 + kap / 4.0;
        let d = w + w0 / 2.0 + kap / 4.0;
        // off-diagonal λ/√1 · √1 · √(3/4 + 1/4)
        let b = lam;
        let mean = (a + d) / 2.0;
        let rad = (((a - d) / 2.0).powi(2) + b * b).sqrt();
        assert_relative_eq!(eig.energies[0], mean - rad, epsilon = 1e-14);
        assert_relative_eq!(eig.energies[1], mean + rad, epsilon = 1e-14);
    }

    #[test]
    fn vectors_orthonormal_and_phase_fixed() {
        let p = small(0.9, 0.3);
        let h = build_hamiltonian(&p, Parity::Even).unwrap();
        let eig = diagonalize(&h, true).unwrap();
        let u = eig.vectors.as_ref().unwrap();
        let gram = u.transpose() * u;
        for i in 0..u.ncols() {
            for k in 0..u.ncols() {
                let expect = if i == k { 1.0 } else { 0.0 };
                assert!((gram[(i, k)] - expect).abs() < 1e-10);
            }
            let col: Vec<f64> = (0..u.nrows()).map(|r| u[(r, i)]).collect();
            let big = col.iter().cloned().fold(0.0f64, |m, x| m.max(x.abs()));
            let first = col.iter().position(|x| x.abs() == big).unwrap();
            assert!(col[first] > 0.0);
        }
        let vals_only = diagonalize(&h, false).unwrap();
        for (a, b) in vals_only.energies.iter().zip(&eig.energies) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn window_is_closed_and_recorded() {
        let p = small(0.0, 0.0);
        let eig = diagonalize(&build_hamiltonian(&p, Parity::Even).unwrap(), false).unwrap();
        let mut q = p.clone();
        // N = 6, j = 3: even-sector energies n + m are odd integers, so the
        // lower edge E = 3 sits exactly on the window boundary.
        q.energy_window = crate::model::EnergyWindow::new(0.5, 2.0).unwrap();
        let ds = filter_energy_window(eig.clone(), &q).unwrap();
        assert!(ds.energies.iter().all(|&e| (3.0..=12.0).contains(&e)));
        assert!((ds.energies[0] - 3.0).abs() < 1e-12);
        assert!((ds.energies[ds.energies.len() - 1] - 11.0).abs() < 1e-12);
        for (k, &i) in ds.window_indices.iter().enumerate() {
            assert_eq!(eig.energies[i], ds.energies[k]);
        }

        q.energy_window = crate::model::EnergyWindow::new(100.0, 200.0).unwrap();
        assert!(matches!(filter_energy_window(eig, &q), Err(Error::EmptyWindow { .. })));
    }

    #[test]
    fn convergence_flags() {
        let mut p = small(0.0, 0.0);
        // E/N <= 3 keeps n <= 21, below the tail layers n >= 25
        p.energy_window = crate::model::EnergyWindow::new(0.4, 3.0).unwrap();
        let eig = diagonalize(&build_hamiltonian(&p, Parity::Even).unwrap(), true).unwrap();
        let ds = filter_energy_window(eig, &p).unwrap();
        let rep = check_convergence(&ds, 5, 1e-6).unwrap();
        // uncoupled states are single basis vectors below the cutoff tail
        assert_eq!(rep.converged_fraction, 1.0);

        // a state sitting on the last Fock layer carries its full weight in the tail
        let top = ds.basis.iter().position(|s| s.n == p.n_cutoff).unwrap();
        let mut fake = ds.clone();
        fake.coefficients = Some(Mat::from_fn(ds.dim(), 1, |i, _| if i == top { 1.0 } else { 0.0 }));
        let rep = check_convergence(&fake, 5, 1e-6).unwrap();
        assert_eq!(rep.flags, vec![false]);
        assert_eq!(rep.tail_weights, vec![1.0]);

        let mut bare = ds;
        bare.coefficients = None;
        assert!(matches!(check_convergence(&bare, 5, 1e-6), Err(Error::MissingVectors)));
    }
}
