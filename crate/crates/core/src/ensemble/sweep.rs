use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{write_atomic, ExperimentConfig};
use crate::error::Result;
use crate::format::sig12;
use crate::graphs::{generate, site_ordering};
use crate::hamiltonian::build_capped;
use crate::observables::{ensemble_stats, ObservablesRecord};
use crate::rng::RngSeed;
use crate::solvers::ground_state;

/// One `(L, value, draw)` row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub ensemble: String,
    pub l: usize,
    pub draw: usize,
    pub seed: u64,
    pub param_name: String,
    pub param_value: f64,
    pub observables: ObservablesRecord,
    pub n_edges: usize,
    pub connected: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellFailure {
    pub l: usize,
    pub param_value: f64,
    pub draw: usize,
    pub seed: u64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub ensemble: String,
    pub l: usize,
    pub param_value: f64,
    pub n_ok: usize,
    pub n_failed: usize,
    /// `(mean, variance)` per entry of [`SUMMARY_OBSERVABLES`].
    pub stats: Vec<(Option<f64>, Option<f64>)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub records: Vec<SweepRecord>,
    pub failures: Vec<CellFailure>,
    pub summary: Vec<SummaryRow>,
}

pub const SWEEP_CSV_HEADER: &str = "ensemble,L,draw,seed,param_name,param_value,energy_density,c_afm,c_xy,mz_density,mx_density,ee_bits,shannon_zz,shannon_xx,shannon_yy,ground_M,degenerate,n_edges,connected";

pub const SUMMARY_OBSERVABLES: [&str; 9] = [
    "energy_density",
    "c_afm",
    "c_xy",
    "mz_density",
    "mx_density",
    "ee_bits",
    "shannon_zz",
    "shannon_xx",
    "shannon_yy",
];

fn observable_values(o: &ObservablesRecord) -> [f64; 9] {
    [
        o.energy_density,
        o.c_afm,
        o.c_xy,
        o.mz_density,
        o.mx_density,
        o.ee_bits,
        o.shannon_zz,
        o.shannon_xx,
        o.shannon_yy,
    ]
}

fn run_cell(c: &ExperimentConfig, l: usize, value: f64, draw: usize, seed: RngSeed) -> Result<SweepRecord> {
    let g = generate(&c.ensemble, l, seed)?;
    let op = build_capped(&g, &c.params_at(value), c.solver.max_dim)?;
    let gs = ground_state(&op, &c.solver.options(), seed.child(1))?;
    let ordering = site_ordering(&g, c.ordering_kind())?;
    let observables = ObservablesRecord::measure(&gs, &g, &ordering, c.n_bins, c.per_pair_xy)?;
    Ok(SweepRecord {
        ensemble: c.ensemble.label(),
        l,
        draw,
        seed: seed.derived(),
        param_name: c.param.clone(),
        param_value: value,
        observables,
        n_edges: g.num_edges(),
        connected: g.is_connected(),
    })
}

/// Runs every cell on the current rayon pool. Rows come back in
/// `(L, value, draw)` order whatever the scheduling.
pub fn run_sweep(c: &ExperimentConfig) -> Result<SweepOutput> {
    c.validate()?;
    let mut cells = Vec::new();
    for (li, &l) in c.ls.iter().enumerate() {
        for (vi, &value) in c.values.iter().enumerate() {
            for draw in 0..c.n_draws {
                cells.push((l, value, draw, RngSeed::new(c.master_seed, c.cell_index(li, vi, draw))));
            }
        }
    }
    let results: Vec<Result<SweepRecord>> = cells
        .par_iter()
        .map(|&(l, value, draw, seed)| run_cell(c, l, value, draw, seed))
        .collect();

    let mut records = Vec::new();
    let mut failures = Vec::new();
    for ((l, value, draw, seed), r) in cells.into_iter().zip(results) {
        match r {
            Ok(rec) => records.push(rec),
            Err(e) => failures.push(CellFailure {
                l,
                param_value: value,
                draw,
                seed: seed.derived(),
                reason: e.to_string(),
            }),
        }
    }

    let mut summary = Vec::new();
    for &l in &c.ls {
        for &value in &c.values {
            let rows: Vec<&SweepRecord> = records
                .iter()
                .filter(|r| r.l == l && r.param_value == value)
                .collect();
            let n_failed = failures
                .iter()
                .filter(|f| f.l == l && f.param_value == value)
                .count();
            let stats = (0..SUMMARY_OBSERVABLES.len())
                .map(|k| {
                    let xs: Vec<f64> = rows.iter().map(|r| observable_values(&r.observables)[k]).collect();
                    match ensemble_stats(&xs) {
                        Ok(s) => (Some(s.mean), s.variance),
                        Err(_) => (None, None),
                    }
                })
                .collect();
            summary.push(SummaryRow {
                ensemble: c.ensemble.label(),
                l,
                param_value: value,
                n_ok: rows.len(),
                n_failed,
                stats,
            });
        }
    }
    Ok(SweepOutput {
        records,
        failures,
        summary,
    })
}

fn opt(x: Option<f64>) -> String {
    x.map(sig12).unwrap_or_default()
}

pub fn sweep_csv(records: &[SweepRecord]) -> String {
    let mut s = String::new();
    writeln!(s, "{SWEEP_CSV_HEADER}").unwrap();
    for r in records {
        let o = &r.observables;
        let vals: Vec<String> = observable_values(o).iter().map(|&x| sig12(x)).collect();
        writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.ensemble,
            r.l,
            r.draw,
            r.seed,
            r.param_name,
            sig12(r.param_value),
            vals.join(","),
            o.ground_m.map(|m| m.to_string()).unwrap_or_default(),
            u8::from(o.degenerate),
            r.n_edges,
            u8::from(r.connected),
        )
        .unwrap();
    }
    s
}

pub fn summary_header() -> String {
    let mut cols = vec!["ensemble", "L", "param_value", "n_ok", "n_failed"]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
    for name in SUMMARY_OBSERVABLES {
        cols.push(format!("mean_{name}"));
        cols.push(format!("var_{name}"));
    }
    cols.join(",")
}

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut s = String::new();
    writeln!(s, "{}", summary_header()).unwrap();
    for r in rows {
        let stats: Vec<String> = r
            .stats
            .iter()
            .flat_map(|&(m, v)| [opt(m), opt(v)])
            .collect();
        writeln!(
            s,
            "{},{},{},{},{},{}",
            r.ensemble,
            r.l,
            sig12(r.param_value),
            r.n_ok,
            r.n_failed,
            stats.join(",")
        )
        .unwrap();
    }
    s
}

pub fn failures_csv(failures: &[CellFailure]) -> String {
    let mut s = String::from("L,param_value,draw,seed,reason\n");
    for f in failures {
        let reason = f.reason.replace(['\n', ','], " ");
        writeln!(s, "{},{},{},{},{}", f.l, sig12(f.param_value), f.draw, f.seed, reason).unwrap();
    }
    s
}

/// `sweep.csv` → `sweep.summary.csv` (and `sweep.failures.csv`).
pub fn sibling_path(path: &Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.{tag}.csv"))
}

/// Writes the sweep CSV, its summary and, if any cell failed, a failure
/// list. Returns the paths written.
pub fn write_sweep(out: &SweepOutput, path: &Path) -> Result<Vec<PathBuf>> {
    let mut written = vec![path.to_path_buf()];
    write_atomic(path, sweep_csv(&out.records).as_bytes())?;
    let summary = sibling_path(path, "summary");
    write_atomic(&summary, summary_csv(&out.summary).as_bytes())?;
    written.push(summary);
    if !out.failures.is_empty() {
        let f = sibling_path(path, "failures");
        write_atomic(&f, failures_csv(&out.failures).as_bytes())?;
        written.push(f);
    }
    Ok(written)
}
