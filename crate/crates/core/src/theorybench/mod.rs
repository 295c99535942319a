//! Numerical checks of the convergence results: difference-operator
//! scaling, the free-energy bound, free-energy convergence, cut
//! concentration and the collective two-spin limit.

mod fit;
mod lemma;
mod studies;

pub use fit::{power_law_fit, study_csv, study_sidecar, ScalingFit, ScalingPoint, STUDY_CSV_HEADER};
pub use lemma::{lemma_s1_check, LemmaS1Report};
pub use studies::{
    collective_pair_energy_density, cut_concentration, diffmax_scaling, free_energy_convergence,
    theorem_s2_check,
};
