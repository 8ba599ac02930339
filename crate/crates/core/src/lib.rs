//! Exact diagonalization of the extended Dicke model and the standard
//! diagnostics of quantum chaos built on top of it.
//!
//! The pipeline for one parameter point is
//! [`model::build_hamiltonian`] → [`spectrum::diagonalize`] →
//! [`spectrum::filter_energy_window`] → indicators from
//! [`spectral_stats`] and [`eigenstate_stats`]. [`pipeline::analyze_point`]
//! chains these, and [`sweep_io::run_sweep`] maps it over a `(κ, λ)` grid.
//!
//! ```no_run
//! use dicke_chaos::{analyze_point, AnalysisOptions, ModelParams};
//!
//! let params = ModelParams::default().with_coupling(1.0, 0.0);
//! let point = analyze_point(&params, &AnalysisOptions::default(), None)?;
//! println!("eta = {:.3}, <r> = {:.3}", point.indicators.eta, point.indicators.mean_r);
//! # Ok::<(), dicke_chaos::Error>(())
//! ```

pub mod cache;
pub mod cli;
pub mod eigenstate_stats;
pub mod error;
pub mod histogram;
pub mod model;
pub mod pipeline;
pub mod sampling;
pub mod spectral_stats;
pub mod spectrum;
pub mod sweep_io;

pub use error::{Error, Result};
pub use histogram::{BinRange, Histogram};
pub use model::{build_hamiltonian, EnergyWindow, ModelParams, Parity, Spin};
pub use pipeline::{analyze_point, AnalysisOptions, PointAnalysis};
pub use spectral_stats::{ChaosIndicators, Indicator};
pub use spectrum::{diagonalize, filter_energy_window, SpectralDataset};
pub use sweep_io::{run_sweep, RunConfig, SweepConfig, SweepResultRow};
