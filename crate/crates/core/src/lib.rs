//! Generalized coherent states for quantum systems with degenerate discrete
//! energy spectra, and their nonclassicality observables.
//!
//! A system is described by its rearranged spectrum: distinct energies
//! ρ_0 = 0 < ρ_1 < ρ_2 < … with degeneracy counts d_n ([`spectrum`]). The
//! coherent state with amplitude z puts probability
//! w_n = |z|^{2n} d_n / (\[ρ_n\]! N_ρ) on level n, where \[ρ_n\]! = ρ_n ⋯ ρ_1;
//! everything downstream is a function of those weights ([`state`]).
//!
//! On top of the weights the crate computes:
//!
//! - photon statistics: mean/variance of the number operator and the Mandel
//!   parameter ([`state`]);
//! - the minimum-uncertainty check for the spectrum ladder quadratures
//!   ([`state`]);
//! - the Pegg–Barnett phase distribution, phase variance, number-phase
//!   commutator and squeezing parameters ([`phase`]);
//! - number and phase Shannon entropies with the ln(2π) uncertainty bound
//!   ([`entropic`]);
//! - Gazeau–Klauder time evolution of the phase-side quantities
//!   ([`dynamics`]).
//!
//! Built-in systems: a particle in a two-dimensional square box, the two- and
//! three-dimensional isotropic harmonic oscillators, and the nondegenerate
//! oscillator whose coherent state is the Glauber state (the analytic
//! oracle). Custom spectra load from a plain-text format.
//!
//! ```
//! use degen_cs::{DegenerateSpectrum, PhaseGrid, StateWeights, TruncationPolicy};
//! use std::sync::Arc;
//!
//! let spectrum = Arc::new(DegenerateSpectrum::box2d(128));
//! let state = StateWeights::new(spectrum, 2.0, &TruncationPolicy::default()).unwrap();
//! let report = degen_cs::entropic::entropy_report(&state, &PhaseGrid::default());
//! assert!(report.margin >= -1e-9);
//! ```

pub mod dynamics;
pub mod entropic;
pub mod numeric;
pub mod phase;
pub mod spectrum;
pub mod state;

pub use dynamics::{EntropicSumRow, EvolutionGrid, GkState};
pub use entropic::EntropyReport;
pub use phase::{PhaseDistribution, PhaseError, PhaseGrid, SqueezingReport};
pub use spectrum::{box2d_degeneracy, DegenerateSpectrum, EnergyLevel, SpectrumError};
pub use state::{LadderExpectations, QuadratureReport, StateError, StateWeights, TruncationPolicy};

pub use num_complex::Complex64;
