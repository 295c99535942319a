use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{EnsembleSpec, OrderingKind};
use crate::hamiltonian::{preset_tfi, preset_xxz, CouplingParams, DEFAULT_MAX_DIM};
use crate::observables::DEFAULT_BINS;
use crate::solvers::{SolverMethod, SolverOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Xxz,
    Tfi,
}

impl Model {
    pub fn param_name(self) -> &'static str {
        match self {
            Model::Xxz => "delta",
            Model::Tfi => "h",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverSettings {
    pub method: SolverMethod,
    pub tol: f64,
    pub max_iter: usize,
    pub krylov_dim: usize,
    pub dense_threshold: usize,
    pub tie_tol: f64,
    /// Largest Hilbert-space dimension any cell may build.
    pub max_dim: u64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        let o = SolverOptions::default();
        SolverSettings {
            method: o.method,
            tol: o.tol,
            max_iter: o.max_iter,
            krylov_dim: o.krylov_dim,
            dense_threshold: o.dense_threshold,
            tie_tol: o.tie_tol,
            max_dim: 1 << 20,
        }
    }
}

impl SolverSettings {
    pub fn options(&self) -> SolverOptions {
        SolverOptions {
            method: self.method,
            tol: self.tol,
            max_iter: self.max_iter,
            krylov_dim: self.krylov_dim,
            dense_threshold: self.dense_threshold,
            tie_tol: self.tie_tol,
        }
    }
}

fn default_j() -> f64 {
    1.0
}

fn default_true() -> bool {
    true
}

fn default_bins() -> usize {
    DEFAULT_BINS
}

/// One sweep over `(L, parameter value, draw)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: Model,
    pub ensemble: EnsembleSpec,
    #[serde(rename = "L")]
    pub ls: Vec<usize>,
    /// `delta` for xxz, `h` for tfi.
    pub param: String,
    pub values: Vec<f64>,
    pub n_draws: usize,
    pub master_seed: u64,
    /// XY coupling scale of the xxz model.
    #[serde(rename = "J", default = "default_j")]
    pub j: f64,
    /// Adds the small z field that selects one tfi ground state.
    #[serde(default = "default_true")]
    pub break_symmetry: bool,
    #[serde(default)]
    pub solver: SolverSettings,
    #[serde(default = "default_bins")]
    pub n_bins: usize,
    /// Site ordering for the half-system entropy; chosen from the ensemble
    /// when absent.
    #[serde(default)]
    pub ordering: Option<OrderingKind>,
    /// Divide `C_XY` by the number of pairs instead of `N_E`.
    #[serde(default)]
    pub per_pair_xy: bool,
    /// Sweep CSV path; the summary goes next to it.
    #[serde(default)]
    pub output: Option<PathBuf>,
}

fn cfg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Config(msg.into()))
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let c: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn validate(&self) -> Result<()> {
        if self.ls.is_empty() {
            return cfg("L list is empty");
        }
        if self.values.is_empty() {
            return cfg("value list is empty");
        }
        if self.n_draws == 0 {
            return cfg("n_draws must be positive");
        }
        if self.param != self.model.param_name() {
            return cfg(format!(
                "model {:?} sweeps '{}', not '{}'",
                self.model,
                self.model.param_name(),
                self.param
            ));
        }
        if self.values.iter().any(|v| !v.is_finite()) || !self.j.is_finite() {
            return cfg("sweep values and J must be finite");
        }
        if self.n_bins < 2 {
            return cfg("n_bins must be at least 2");
        }
        let o = &self.solver;
        if !(o.tol > 0.0) || o.max_iter == 0 || o.krylov_dim < 2 {
            return cfg("solver tol, max_iter and krylov_dim must be positive");
        }
        if self.solver.max_dim > DEFAULT_MAX_DIM {
            return cfg(format!("max_dim above the hard cap {DEFAULT_MAX_DIM}"));
        }
        let mut sorted = self.ls.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.ls.len() {
            return cfg("L list has duplicates");
        }
        for &l in &self.ls {
            if l < 2 {
                return cfg("every L must be at least 2");
            }
            if l >= 64 || (1u64 << l) > self.solver.max_dim {
                return cfg(format!(
                    "L = {l} needs dimension 2^{l}, above max_dim {}",
                    self.solver.max_dim
                ));
            }
            self.ensemble
                .validate(l)
                .map_err(|e| Error::Config(e.to_string()))?;
            if self.ordering_kind() == OrderingKind::CutBlocks
                && !matches!(self.ensemble, EnsembleSpec::Cut { .. })
            {
                return cfg("cut_blocks ordering needs a cut ensemble");
            }
        }
        Ok(())
    }

    pub fn ordering_kind(&self) -> OrderingKind {
        self.ordering.unwrap_or(match self.ensemble {
            EnsembleSpec::Cut { .. } => OrderingKind::CutBlocks,
            EnsembleSpec::Antiregular => OrderingKind::IrregularCenter,
            _ => OrderingKind::Identity,
        })
    }

    pub fn params_at(&self, value: f64) -> CouplingParams {
        match self.model {
            Model::Xxz => preset_xxz(self.j, value),
            Model::Tfi => preset_tfi(value, self.break_symmetry),
        }
    }

    /// Derivation index of cell `(L_pos, value_pos, draw)`.
    pub fn cell_index(&self, l_pos: usize, value_pos: usize, draw: usize) -> u64 {
        ((l_pos * self.values.len() + value_pos) * self.n_draws + draw) as u64
    }
}

/// Uniform grid `start, start + step, …` up to `stop` inclusive.
pub fn uniform_grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| start + step * i as f64).collect()
}

/// Names accepted by [`preset`].
pub const PRESETS: &[&str] = &["er-xxz", "cut-xxz", "uniform-degree-xxz", "antiregular-xxz", "er-tfi"];

/// Ready-made sweeps at desk scale.
pub fn preset(name: &str) -> Result<ExperimentConfig> {
    let base = |ensemble, ls: Vec<usize>, model: Model, values: Vec<f64>, n_draws| ExperimentConfig {
        model,
        ensemble,
        ls,
        param: model.param_name().into(),
        values,
        n_draws,
        master_seed: 1,
        j: 1.0,
        break_symmetry: true,
        solver: SolverSettings::default(),
        n_bins: DEFAULT_BINS,
        ordering: None,
        per_pair_xy: false,
        output: None,
    };
    let deltas = uniform_grid(0.0, 6.0, 0.25);
    let c = match name {
        "er-xxz" => base(EnsembleSpec::ErdosRenyi { p: 0.5 }, vec![8, 10, 12], Model::Xxz, deltas, 100),
        "cut-xxz" => base(
            EnsembleSpec::Cut { lambda: 0.5, p1: 0.5, p2: 1.0 },
            vec![8, 10, 12],
            Model::Xxz,
            deltas,
            100,
        ),
        "uniform-degree-xxz" => base(
            EnsembleSpec::UniformDegree { deg_lo: None, deg_hi: None },
            vec![8, 10, 12],
            Model::Xxz,
            deltas,
            100,
        ),
        "antiregular-xxz" => base(EnsembleSpec::Antiregular, vec![8, 10, 12], Model::Xxz, deltas, 1),
        "er-tfi" => base(
            EnsembleSpec::ErdosRenyi { p: 0.5 },
            vec![8, 10, 12],
            Model::Tfi,
            uniform_grid(0.0, 3.0, 0.25),
            100,
        ),
        other => return cfg(format!("unknown preset '{other}'; known: {}", PRESETS.join(", "))),
    };
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal() -> &'static str {
        r#"{"model": "xxz", "ensemble": {"kind": "er", "p": 0.5}, "L": [6, 8],
            "param": "delta", "values": [0, 1], "n_draws": 2, "master_seed": 3}"#
    }

    #[test]
    fn parses_with_defaults() {
        let c = ExperimentConfig::from_json(minimal()).unwrap();
        assert_eq!(c.n_bins, 256);
        assert_eq!(c.j, 1.0);
        assert_eq!(c.ordering_kind(), OrderingKind::Identity);
        assert_eq!(c.cell_index(1, 1, 1), 7);
    }

    #[test]
    fn rejects_unknown_keys() {
        let text = minimal().replace("\"master_seed\": 3", "\"master_seed\": 3, \"bogus\": 1");
        assert!(matches!(ExperimentConfig::from_json(&text), Err(Error::Config(_))));
        let text = minimal().replace("\"p\": 0.5", "\"p\": 0.5, \"q\": 1");
        assert!(ExperimentConfig::from_json(&text).is_err());
    }

    #[test]
    fn rejects_bad_values() {
        for (from, to) in [
            ("\"delta\"", "\"h\""),
            ("\"n_draws\": 2", "\"n_draws\": 0"),
            ("[6, 8]", "[6, 40]"),
            ("\"p\": 0.5", "\"p\": 1.5"),
        ] {
            let text = minimal().replace(from, to);
            assert!(ExperimentConfig::from_json(&text).is_err(), "{from} -> {to}");
        }
    }

    #[test]
    fn presets_validate_and_roundtrip() {
        for name in PRESETS {
            let c = preset(name).unwrap();
            c.validate().unwrap();
            assert_eq!(ExperimentConfig::from_json(&c.to_json()).unwrap(), c);
        }
        assert!(preset("nope").is_err());
        assert_eq!(uniform_grid(0.0, 6.0, 0.25).len(), 25);
    }
}
