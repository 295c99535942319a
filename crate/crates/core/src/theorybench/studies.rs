use rayon::prelude::*;

use super::{ScalingFit, ScalingPoint};
use crate::error::{param, Error, Result};
use crate::graphs::{cut_deviation_scan, generate, CutScanMode, EnsembleSpec, Graph};
use crate::hamiltonian::{build, build_collective_pair, build_difference, preset_xxz, CouplingParams};
use crate::rng::RngSeed;
use crate::solvers::{
    dense_spectrum, free_energy_density, full_spectrum, ground_state, spin_extreme_abs, SolverOptions,
};

/// Runs `cell(l, draw, seed)` over the `L × draw` grid in parallel and
/// gathers results in `(L, draw)` order.
fn grid<F>(ls: &[usize], n_draws: usize, seed: u64, cell: F) -> Result<Vec<Vec<f64>>>
where
    F: Fn(usize, usize, RngSeed) -> Result<f64> + Sync,
{
    if ls.is_empty() || n_draws == 0 {
        return param("need at least one L and one draw");
    }
    let cells: Vec<(usize, usize)> = (0..ls.len())
        .flat_map(|i| (0..n_draws).map(move |d| (i, d)))
        .collect();
    let values: Vec<Result<f64>> = cells
        .par_iter()
        .map(|&(i, d)| {
            let index = (i * n_draws + d) as u64;
            cell(ls[i], d, RngSeed::new(seed, index)).map_err(|e| match e {
                Error::Parameter(m) => Error::Parameter(format!("L={} draw={d}: {m}", ls[i])),
                Error::Data(m) => Error::Data(format!("L={} draw={d}: {m}", ls[i])),
                other => other,
            })
        })
        .collect();
    let mut out = vec![Vec::with_capacity(n_draws); ls.len()];
    for ((i, _), v) in cells.into_iter().zip(values) {
        out[i].push(v?);
    }
    Ok(out)
}

fn points(ls: &[usize], draws: Vec<Vec<f64>>) -> Vec<ScalingPoint> {
    ls.iter()
        .zip(draws)
        .map(|(&l, d)| ScalingPoint {
            l,
            mean: d.iter().sum::<f64>() / d.len() as f64,
            draws: d,
        })
        .collect()
}

fn er_graph(l: usize, p: f64, seed: RngSeed) -> Result<Graph> {
    let g = generate(&EnsembleSpec::ErdosRenyi { p }, l, seed)?;
    if g.num_edges() == 0 {
        return Err(Error::NoEdges);
    }
    Ok(g)
}

/// Mean `|λ_max|` of the difference operator `H(Complete) − H(ER(p))`.
pub fn diffmax_scaling(
    ls: &[usize],
    params: &CouplingParams,
    p: f64,
    n_draws: usize,
    seed: u64,
    opts: &SolverOptions,
) -> Result<ScalingFit> {
    let draws = grid(ls, n_draws, seed, |l, _, s| {
        let g = er_graph(l, p, s)?;
        let d = build_difference(&g, params)?;
        Ok(spin_extreme_abs(&d, opts, s.child(1))?.abs())
    })?;
    Ok(ScalingFit::from_points("diffmax", points(ls, draws), seed))
}

/// Mean `|f(H(ER(p))) − f(H(Complete))|` per β, one fit per β.
pub fn free_energy_convergence(
    ls: &[usize],
    p: f64,
    params: &CouplingParams,
    betas: &[f64],
    n_draws: usize,
    seed: u64,
) -> Result<Vec<ScalingFit>> {
    if betas.is_empty() || betas.iter().any(|&b| !(b > 0.0)) {
        return param("need at least one positive beta");
    }
    let complete: Vec<Vec<f64>> = ls
        .par_iter()
        .map(|&l| full_spectrum(&build(&Graph::complete(l), params)?))
        .collect::<Result<_>>()?;
    let nb = betas.len();
    // Each cell returns the gaps for all β; unpack per β afterwards.
    let cells: Vec<(usize, usize)> = (0..ls.len())
        .flat_map(|i| (0..n_draws).map(move |d| (i, d)))
        .collect();
    let gaps: Vec<Result<Vec<f64>>> = cells
        .par_iter()
        .map(|&(i, d)| {
            let l = ls[i];
            let s = RngSeed::new(seed, (i * n_draws + d) as u64);
            let g = er_graph(l, p, s)?;
            let ev = full_spectrum(&build(&g, params)?)?;
            betas
                .iter()
                .map(|&b| {
                    Ok((free_energy_density(&ev, l, b)? - free_energy_density(&complete[i], l, b)?).abs())
                })
                .collect()
        })
        .collect();
    let mut per_beta = vec![vec![Vec::with_capacity(n_draws); ls.len()]; nb];
    for ((i, _), g) in cells.into_iter().zip(gaps) {
        let g = g?;
        for (k, v) in g.into_iter().enumerate() {
            per_beta[k][i].push(v);
        }
    }
    Ok(per_beta
        .into_iter()
        .zip(betas)
        .map(|(draws, b)| ScalingFit::from_points(format!("free_energy_beta={b}"), points(ls, draws), seed))
        .collect())
}

/// Mean over ER(p) draws of the largest balanced-cut deviation from
/// `pL²/4`.
pub fn cut_concentration(
    ls: &[usize],
    p: f64,
    n_draws: usize,
    sampled: Option<usize>,
    seed: u64,
) -> Result<ScalingFit> {
    let draws = grid(ls, n_draws, seed, |l, _, s| {
        let g = generate(&EnsembleSpec::ErdosRenyi { p }, l, s)?;
        let mode = match sampled {
            Some(n) => CutScanMode::Sampled { n, seed: s.child(1) },
            None => CutScanMode::Exhaustive,
        };
        let m = if l % 2 == 0 { 0 } else { 1 };
        Ok(cut_deviation_scan(&g, p, m, mode)?.max_abs_deviation)
    })?;
    Ok(ScalingFit::from_points("cuts", points(ls, draws), seed))
}

/// Ground-state energy density of the collective two-spin operator.
pub fn collective_pair_energy_density(
    l: usize,
    lambda: f64,
    p1: f64,
    p2: f64,
    params: &CouplingParams,
) -> Result<f64> {
    let op = build_collective_pair(l, lambda, p1, p2, params)?;
    Ok(dense_spectrum(&op)?[0] / l as f64)
}

/// Mean `|e_ED(Cut graph) − e_pair|` between exact ground-state energy
/// densities of drawn cut graphs and the collective two-spin operator.
#[allow(clippy::too_many_arguments)]
pub fn theorem_s2_check(
    ls: &[usize],
    lambda: f64,
    p1: f64,
    p2: f64,
    j: f64,
    delta: f64,
    n_draws: usize,
    seed: u64,
) -> Result<ScalingFit> {
    let params = preset_xxz(j, delta);
    let spec = EnsembleSpec::Cut { lambda, p1, p2 };
    let draws = grid(ls, n_draws, seed, |l, _, s| {
        let pair = collective_pair_energy_density(l, lambda, p1, p2, &params)?;
        let g = generate(&spec, l, s)?;
        if g.num_edges() == 0 {
            return Err(Error::NoEdges);
        }
        let gs = ground_state(&build(&g, &params)?, &SolverOptions::default(), s.child(1))?;
        Ok((gs.energy / l as f64 - pair).abs())
    })?;
    Ok(ScalingFit::from_points("pair", points(ls, draws), seed))
}
