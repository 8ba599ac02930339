//! Extended Dicke model in the Fock–Dicke basis.
//!
//! The Hamiltonian
//!
//! ```text
//! H = ω a†a + ω₀ J_z + (2λ/√N) J_x (a + a†) + (κ/N) J_z²
//! ```
//!
//! is never represented through operator objects. It is assembled directly from
//! its matrix elements between product states `|n⟩ ⊗ |j, m⟩`, restricted to one
//! eigenspace of the parity `Π = exp(iπ(j + J_z + a†a))`.
//!
//! Basis ordering is fixed: primary key `n` ascending, secondary key `m`
//! ascending. Every coefficient index elsewhere in the crate refers to it.

use std::collections::HashMap;
use std::fmt;

use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest sector dimension [`build_hamiltonian`] will allocate (~1.6 GiB dense).
pub const DEFAULT_MAX_DIM: usize = 14_000;

/// Collective spin quantum number `j`, stored as `2j` so half-integers are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Spin(u32);

impl Spin {
    pub fn from_twice(twice_j: u32) -> Result<Self> {
        if twice_j == 0 {
            return Err(Error::InvalidParams("j must be positive".into()));
        }
        Ok(Spin(twice_j))
    }

    /// `2j`, which is also the atom number `N`.
    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }
}

impl TryFrom<f64> for Spin {
    type Error = Error;

    fn try_from(j: f64) -> Result<Self> {
        let twice = 2.0 * j;
        if !twice.is_finite() || twice.fract() != 0.0 || twice < 1.0 || twice > f64::from(u32::MAX) {
            return Err(Error::InvalidParams(format!(
                "j = {j} is not a positive integer or half-integer"
            )));
        }
        Spin::from_twice(twice as u32)
    }
}

impl From<Spin> for f64 {
    fn from(s: Spin) -> f64 {
        s.value()
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Closed interval of scaled energies `E/N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct EnergyWindow {
    pub lo: f64,
    pub hi: f64,
}

impl EnergyWindow {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidParams(format!(
                "energy window [{lo}, {hi}] must satisfy lo < hi"
            )));
        }
        Ok(EnergyWindow { lo, hi })
    }

    /// Whether `energy / n_atoms` lies in the closed window.
    pub fn contains(&self, energy: f64, n_atoms: f64) -> bool {
        let e = energy / n_atoms;
        e >= self.lo && e <= self.hi
    }
}

impl TryFrom<[f64; 2]> for EnergyWindow {
    type Error = Error;

    fn try_from([lo, hi]: [f64; 2]) -> Result<Self> {
        EnergyWindow::new(lo, hi)
    }
}

impl From<EnergyWindow> for [f64; 2] {
    fn from(w: EnergyWindow) -> Self {
        [w.lo, w.hi]
    }
}

/// Physical and truncation parameters of one model instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Field frequency ω.
    pub omega: f64,
    /// Atomic level splitting ω₀.
    pub omega0: f64,
    /// Atom–field coupling λ.
    pub lambda: f64,
    /// Atom–atom interaction κ.
    pub kappa: f64,
    /// Collective spin; the atom number is `N = 2j`.
    pub j: Spin,
    /// Highest retained Fock number.
    pub n_cutoff: u32,
    /// Window for spectral statistics.
    pub energy_window: EnergyWindow,
    /// Window for eigenstate statistics.
    pub mid_window: EnergyWindow,
}

impl Default for ModelParams {
    /// `ω = ω₀ = 1`, `j = 16`, `N_c = 320`, windows `[0.4, 4]` and `[1.75, 2.25]`.
    fn default() -> Self {
        ModelParams {
            omega: 1.0,
            omega0: 1.0,
            lambda: 0.0,
            kappa: 0.0,
            j: Spin(32),
            n_cutoff: 320,
            energy_window: EnergyWindow { lo: 0.4, hi: 4.0 },
            mid_window: EnergyWindow { lo: 1.75, hi: 2.25 },
        }
    }
}

impl ModelParams {
    pub fn with_coupling(mut self, lambda: f64, kappa: f64) -> Self {
        self.lambda = lambda;
        self.kappa = kappa;
        self
    }

    pub fn with_spin(mut self, twice_j: u32, n_cutoff: u32) -> Result<Self> {
        self.j = Spin::from_twice(twice_j)?;
        self.n_cutoff = n_cutoff;
        Ok(self)
    }

    /// `N = 2j`.
    pub fn n_atoms(&self) -> u32 {
        self.j.twice()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return bad(format!("omega must be > 0, got {}", self.omega));
        }
        if !(self.omega0.is_finite() && self.omega0 > 0.0) {
            return bad(format!("omega0 must be > 0, got {}", self.omega0));
        }
        if !(self.lambda.is_finite() && self.lambda >= 0.0) {
            return bad(format!("lambda must be >= 0, got {}", self.lambda));
        }
        if !(self.kappa.is_finite() && self.kappa >= 0.0) {
            return bad(format!("kappa must be >= 0, got {}", self.kappa));
        }
        if self.n_cutoff < 1 {
            return bad("n_cutoff must be >= 1".into());
        }
        EnergyWindow::new(self.energy_window.lo, self.energy_window.hi)?;
        EnergyWindow::new(self.mid_window.lo, self.mid_window.hi)?;
        Ok(())
    }

    /// Same parameters with every energy scale multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        ModelParams {
            omega: self.omega * c,
            omega0: self.omega0 * c,
            lambda: self.lambda * c,
            kappa: self.kappa * c,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn of(twice_j: u32, twice_m: i32, n: u32) -> Parity {
        // j + m is an integer because m runs from -j in unit steps.
        let j_plus_m = (i64::from(twice_j) + i64::from(twice_m)) / 2;
        if (j_plus_m + i64::from(n)) % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Product state `|n⟩ ⊗ |j, m⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisState {
    pub n: u32,
    /// `2m`.
    pub twice_m: i32,
    pub parity: Parity,
}

impl BasisState {
    pub fn m(&self) -> f64 {
        f64::from(self.twice_m) / 2.0
    }
}

/// Dense real symmetric Hamiltonian over one ordered basis.
#[derive(Debug, Clone)]
pub struct HamiltonianMatrix {
    pub basis: Vec<BasisState>,
    pub entries: Mat<f64>,
}

impl HamiltonianMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// All states of one parity sector, ordered by `(n, m)`.
pub fn enumerate_basis(params: &ModelParams, sector: Parity) -> Vec<BasisState> {
    enumerate_full_basis(params)
        .into_iter()
        .filter(|s| s.parity == sector)
        .collect()
}

/// Both parity sectors interleaved in the global `(n, m)` order.
pub fn enumerate_full_basis(params: &ModelParams) -> Vec<BasisState> {
    let twice_j = params.j.twice();
    let tj = twice_j as i32;
    let mut out = Vec::with_capacity((params.n_cutoff as usize + 1) * (twice_j as usize + 1));
    for n in 0..=params.n_cutoff {
        for twice_m in (-tj..=tj).step_by(2) {
            out.push(BasisState {
                n,
                twice_m,
                parity: Parity::of(twice_j, twice_m, n),
            });
        }
    }
    out
}

fn diagonal_element(params: &ModelParams, n: u32, twice_m: i32) -> f64 {
    let m = f64::from(twice_m) / 2.0;
    let n_atoms = f64::from(params.n_atoms());
    f64::from(n) * params.omega + m * params.omega0 + params.kappa / n_atoms * m * m
}

/// `j(j+1) - m(m ± 1)` evaluated in exact integer arithmetic on doubled labels.
fn ladder_factor(twice_j: u32, twice_m: i32, twice_m_target: i32) -> f64 {
    let tj = i64::from(twice_j);
    let tm = i64::from(twice_m);
    let tt = i64::from(twice_m_target);
    // 4[j(j+1) - m m'] with m' = m ± 1
    let quad = tj * (tj + 2) - tm * tt;
    (quad as f64 / 4.0).sqrt()
}

/// Coupling between `ket = (n, m)` and `bra = (n', m')` with `|Δn| = |Δm| = 1`.
/// Symmetric in its two arguments by construction.
fn coupling_element(params: &ModelParams, a: (u32, i32), b: (u32, i32)) -> f64 {
    let (lo, hi) = if a.0 < b.0 { (a, b) } else { (b, a) };
    let n_atoms = f64::from(params.n_atoms());
    // ⟨n+1| a† |n⟩ = √(n+1), and the spin factor is the same from either side.
    let boson = f64::from(hi.0).sqrt();
    let spin = ladder_factor(params.j.twice(), lo.1, hi.1);
    params.lambda / n_atoms.sqrt() * boson * spin
}

/// `⟨bra| H |ket⟩` from the closed-form matrix elements.
pub fn hamiltonian_element(params: &ModelParams, bra: &BasisState, ket: &BasisState) -> f64 {
    let dn = i64::from(bra.n) - i64::from(ket.n);
    let dm2 = i64::from(bra.twice_m) - i64::from(ket.twice_m);
    if dn == 0 && dm2 == 0 {
        diagonal_element(params, ket.n, ket.twice_m)
    } else if dn.abs() == 1 && dm2.abs() == 2 {
        coupling_element(params, (ket.n, ket.twice_m), (bra.n, bra.twice_m))
    } else {
        0.0
    }
}

/// Dense Hamiltonian of one parity sector, capped at [`DEFAULT_MAX_DIM`].
pub fn build_hamiltonian(params: &ModelParams, sector: Parity) -> Result<HamiltonianMatrix> {
    build_hamiltonian_capped(params, sector, DEFAULT_MAX_DIM)
}

pub fn build_hamiltonian_capped(params: &ModelParams, sector: Parity, max_dim: usize) -> Result<HamiltonianMatrix> {
    params.validate()?;
    assemble(params, enumerate_basis(params, sector), max_dim)
}

/// Hamiltonian over the unprojected basis (both parities), mainly for checking
/// that the two sectors decouple.
pub fn build_full_hamiltonian(params: &ModelParams, max_dim: usize) -> Result<HamiltonianMatrix> {
    params.validate()?;
    assemble(params, enumerate_full_basis(params), max_dim)
}

fn assemble(params: &ModelParams, basis: Vec<BasisState>, max_dim: usize) -> Result<HamiltonianMatrix> {
    let dim = basis.len();
    if dim > max_dim {
        return Err(Error::AllocationTooLarge { dim, cap: max_dim });
    }
    let index: HashMap<(u32, i32), usize> = basis.iter().enumerate().map(|(i, s)| ((s.n, s.twice_m), i)).collect();

    let mut entries = Mat::<f64>::zeros(dim, dim);
    for (i, s) in basis.iter().enumerate() {
        entries[(i, i)] = diagonal_element(params, s.n, s.twice_m);
        // Only couple upward in n; the partner fills the mirrored entry.
        let up = s.n + 1;
        for target_m in [s.twice_m - 2, s.twice_m + 2] {
            if let Some(&k) = index.get(&(up, target_m)) {
                let v = coupling_element(params, (s.n, s.twice_m), (up, target_m));
                entries[(i, k)] = v;
                entries[(k, i)] = v;
            }
        }
    }
    Ok(HamiltonianMatrix { basis, entries })
}
