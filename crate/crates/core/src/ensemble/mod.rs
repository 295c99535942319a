//! Configured sweeps over `(ensemble, L, coupling, draw)` and their CSV
//! output.

mod config;
mod io;
mod sweep;

pub use config::{preset, uniform_grid, ExperimentConfig, Model, SolverSettings, PRESETS};
pub use io::write_atomic;
pub use sweep::{
    failures_csv, run_sweep, sibling_path, summary_csv, summary_header, sweep_csv, write_sweep, CellFailure,
    SummaryRow, SweepOutput, SweepRecord, SUMMARY_OBSERVABLES, SWEEP_CSV_HEADER,
};
