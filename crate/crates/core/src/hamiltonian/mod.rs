//! Spin Hamiltonians on graphs: couplings, bases, the matrix-free operator,
//! the complete-minus-graph difference operator and the two-spin collective
//! reduction.

mod basis;
mod collective;
mod operator;
mod params;

pub use basis::SectorBasis;
pub use collective::{build_collective_pair, CollectivePairOperator};
pub use operator::{
    build, build_capped, build_difference, Basis, Bond, LinearOperator, SpinOperator,
    DEFAULT_MAX_DIM,
};
pub use params::{preset_tfi, preset_xxz, CouplingParams};
