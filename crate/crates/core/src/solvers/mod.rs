//! Eigensolvers, closed-form spectra and classical reductions.

mod complete;
mod dense;
mod ground;
mod lanczos;
mod semiclassical;
mod thermo;

pub use complete::{
    binomial, complete_xxz_eigenvalue, complete_xxz_spectrum, mass_within, spectral_density,
    spin_multiplicity, write_spectrum_csv, SpectralDensity, SpectrumEntry,
};
pub use dense::{dense_eigen, dense_spectrum, DenseEigen, DENSE_MAX_DIM};
pub use ground::{full_spectrum, ground_state, spin_extreme_abs, GroundStateResult, SolverKind, SolverMethod, SolverOptions};
pub use lanczos::{extreme_abs_eigenvalue, lanczos, lanczos_lowest, Eigenpair, LanczosOptions, Which};
pub use semiclassical::{
    critical_point, phase_flip_point, semiclassical_pair_minimize, tfi_meanfield, ClassicalPairConfig,
    ClassicalPhase, MeanFieldTfi,
};
pub use thermo::{free_energy_density, free_energy_density_weighted};
