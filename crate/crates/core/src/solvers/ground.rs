use serde::{Deserialize, Serialize};

use super::dense::{dense_eigen, dense_spectrum};
use super::lanczos::{extreme_abs_eigenvalue, lanczos_lowest, LanczosOptions};
use crate::error::Result;
use crate::hamiltonian::{LinearOperator, SectorBasis, SpinOperator};
use crate::rng::RngSeed;
use crate::state::StateVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverMethod {
    /// Dense below `dense_threshold`, Lanczos above.
    #[default]
    Auto,
    Dense,
    Lanczos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    Dense,
    Lanczos,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverOptions {
    pub method: SolverMethod,
    pub tol: f64,
    pub max_iter: usize,
    pub krylov_dim: usize,
    pub dense_threshold: usize,
    /// Energies closer than this (relative to `1 + |E|`) count as tied.
    pub tie_tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            method: SolverMethod::Auto,
            tol: 1e-10,
            max_iter: 5000,
            krylov_dim: 100,
            dense_threshold: 256,
            tie_tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GroundStateResult {
    pub energy: f64,
    pub state: StateVector,
    pub sector: Option<i64>,
    pub solver: SolverKind,
    pub residual: f64,
    pub degenerate: bool,
}

fn residual(op: &dyn LinearOperator, v: &[f64], e: f64) -> f64 {
    let mut w = vec![0.0; v.len()];
    op.apply(v, &mut w);
    w.iter()
        .zip(v)
        .map(|(a, b)| (a - e * b).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Lowest eigenpair of one operator in its own basis.
fn lowest(op: &SpinOperator, opts: &SolverOptions, seed: RngSeed) -> Result<GroundStateResult> {
    let dim = op.dim();
    let dense = match opts.method {
        SolverMethod::Dense => true,
        SolverMethod::Lanczos => false,
        SolverMethod::Auto => dim <= opts.dense_threshold,
    };
    let (energy, vector, degenerate, solver) = if dense {
        let eig = dense_eigen(op)?;
        let e0 = eig.values[0];
        let deg = eig.values.len() > 1 && eig.values[1] - e0 <= opts.tie_tol * (1.0 + e0.abs());
        (e0, eig.vectors.column(0).iter().copied().collect::<Vec<f64>>(), deg, SolverKind::Dense)
    } else {
        let lz = lanczos_lowest(
            op,
            &LanczosOptions {
                tol: opts.tol,
                max_iter: opts.max_iter,
                krylov_dim: opts.krylov_dim,
                seed,
            },
        )?;
        (lz.value, lz.vector, false, SolverKind::Lanczos)
    };
    let mut vector = vector;
    // Fix the overall sign so results do not depend on the eigensolver.
    if let Some(&big) = vector.iter().max_by(|a, b| a.abs().total_cmp(&b.abs())) {
        if big < 0.0 {
            vector.iter_mut().for_each(|x| *x = -*x);
        }
    }
    let res = residual(op, &vector, energy);
    let state = StateVector::new(vector, op.basis().clone())?.normalized()?;
    Ok(GroundStateResult {
        energy,
        state,
        sector: op.basis().sector(),
        solver,
        residual: res,
        degenerate,
    })
}

/// Ground state of `op`. When the operator conserves total S^z every
/// sector is solved and the lowest wins; ties go to smaller |M|, then to
/// M ≥ 0, and are flagged.
pub fn ground_state(op: &SpinOperator, opts: &SolverOptions, seed: RngSeed) -> Result<GroundStateResult> {
    if !op.conserves_sz() {
        return lowest(&op.full_space(), opts, seed);
    }
    let symmetric = !op.has_z_field();
    let mut ms = SectorBasis::magnetizations(op.l(), op.two_s());
    if symmetric {
        ms.retain(|&m| m >= 0);
    }
    ms.sort_by_key(|&m| (m.abs(), m < 0));
    let mut best: Option<GroundStateResult> = None;
    let mut tied = false;
    for (k, m) in ms.into_iter().enumerate() {
        let r = lowest(&op.in_sector(m)?, opts, seed.child(k as u64))?;
        match &best {
            None => best = Some(r),
            Some(b) => {
                let gap = r.energy - b.energy;
                let tol = opts.tie_tol * (1.0 + b.energy.abs());
                if gap < -tol {
                    tied = false;
                    best = Some(r);
                } else if gap.abs() <= tol {
                    tied = true;
                }
            }
        }
    }
    let mut best = best.expect("at least one sector");
    let mirrored = symmetric && best.sector.is_some_and(|m| m != 0);
    best.degenerate = best.degenerate || tied || mirrored;
    Ok(best)
}

/// Every eigenvalue of `op`, ascending, assembled sector by sector when
/// total S^z is conserved.
pub fn full_spectrum(op: &SpinOperator) -> Result<Vec<f64>> {
    if !op.conserves_sz() {
        return dense_spectrum(&op.full_space());
    }
    let mut all = Vec::with_capacity(op.basis().dim());
    for m in SectorBasis::magnetizations(op.l(), op.two_s()) {
        all.extend(dense_spectrum(&op.in_sector(m)?)?);
    }
    all.sort_by(f64::total_cmp);
    Ok(all)
}

/// Eigenvalue of largest magnitude (sign kept), searched sector by sector
/// when total S^z is conserved.
pub fn spin_extreme_abs(op: &SpinOperator, opts: &SolverOptions, seed: RngSeed) -> Result<f64> {
    let ops: Vec<SpinOperator> = if op.conserves_sz() {
        // Without a z field the spin flip maps sector M onto −M.
        SectorBasis::magnetizations(op.l(), op.two_s())
            .into_iter()
            .filter(|&m| m >= 0 || op.has_z_field())
            .map(|m| op.in_sector(m))
            .collect::<Result<_>>()?
    } else {
        vec![op.full_space()]
    };
    let mut best = 0.0f64;
    for (k, sub) in ops.iter().enumerate() {
        let v = if sub.dim() <= opts.dense_threshold {
            let ev = dense_spectrum(sub)?;
            let (lo, hi) = (ev[0], ev[ev.len() - 1]);
            if hi.abs() > lo.abs() { hi } else { lo }
        } else {
            extreme_abs_eigenvalue(
                sub,
                &LanczosOptions {
                    tol: opts.tol,
                    max_iter: opts.max_iter,
                    krylov_dim: opts.krylov_dim,
                    seed: seed.child(k as u64),
                },
            )?
        };
        if v.abs() > best.abs() {
            best = v;
        }
    }
    Ok(best)
}
