//! Correlations, order parameters, entropies and ensemble statistics.

mod corr;
mod entropy;
mod record;
mod stats;

pub use corr::{corr_matrix, magnetization, order_params, order_params_from, Axis, CorrelationMatrix, OrderParams};
pub use entropy::{entanglement_entropy, shannon_entropy, shannon_entropy_of, DEFAULT_BINS};
pub use record::ObservablesRecord;
pub use stats::{ensemble_stats, EnsembleStats};
