//! Spin models on graphs: ensembles, Hamiltonians, eigensolvers,
//! observables and numerical checks of the mean-field limit.

pub mod ensemble;
pub mod error;
pub mod format;
pub mod graphs;
pub mod hamiltonian;
mod linalg;
pub mod observables;
pub mod rng;
pub mod solvers;
pub mod state;
pub mod theorybench;

pub use error::{Error, Result};
pub use graphs::{generate, EnsembleSpec, Graph};
pub use hamiltonian::{build, preset_tfi, preset_xxz, CouplingParams};
pub use rng::RngSeed;
pub use state::StateVector;
