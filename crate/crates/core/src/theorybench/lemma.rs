use nalgebra::DMatrix;
use rand::Rng as _;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{param, Result};
use crate::graphs::{generate, EnsembleSpec, Graph};
use crate::hamiltonian::{build, CouplingParams, LinearOperator};
use crate::linalg::symmetric_eigenvalues;
use crate::rng::{Rng, RngSeed};
use crate::solvers::free_energy_density;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaS1Report {
    pub trials: usize,
    pub dim: usize,
    pub betas: Vec<f64>,
    pub checks: usize,
    pub violations: usize,
    /// Largest `|Δf| / (|λ_max(A − B)| / L)` seen; at most 1 when the
    /// bound holds.
    pub max_ratio: f64,
}

/// Eigenvalues of the complex Hermitian `re + i·im` from its real
/// embedding `[[re, −im], [im, re]]`, which lists each one twice.
fn hermitian_eigenvalues(re: &DMatrix<f64>, im: &DMatrix<f64>) -> Result<Vec<f64>> {
    let n = re.nrows();
    let big = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let (bi, bj) = (i / n, j / n);
        let (r, c) = (i % n, j % n);
        match (bi, bj) {
            (0, 0) | (1, 1) => re[(r, c)],
            (0, 1) => -im[(r, c)],
            _ => im[(r, c)],
        }
    });
    Ok(symmetric_eigenvalues(&big)?.into_iter().step_by(2).collect())
}

/// `(G + G†)/2` with i.i.d. standard normal real and imaginary parts.
fn random_hermitian(n: usize, rng: &mut Rng) -> (DMatrix<f64>, DMatrix<f64>) {
    let gr = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let gi = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    ((&gr + gr.transpose()) * 0.5, (&gi - gi.transpose()) * 0.5)
}

/// Graph Hamiltonians on ER(1/2) and on the complete graph, sharing random
/// couplings.
fn structured_pair(l: usize, seed: RngSeed) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let mut rng = seed.rng();
    let mut u = |lo: f64, hi: f64| rng.gen_range(lo..hi);
    let params = CouplingParams {
        jx: u(-2.0, 2.0),
        jy: u(-2.0, 2.0),
        jz: u(-2.0, 2.0),
        wx: u(-1.0, 1.0),
        wz: u(-1.0, 1.0),
        pauli: true,
        ..CouplingParams::default()
    };
    let mut g = generate(&EnsembleSpec::ErdosRenyi { p: 0.5 }, l, seed.child(1))?;
    if g.num_edges() == 0 {
        g = Graph::chain(l);
    }
    let a = build(&g, &params)?.to_dense();
    let b = build(&Graph::complete(l), &params)?.to_dense();
    Ok((a, b))
}

/// Checks `|f(A) − f(B)| ≤ |λ_max(A − B)| / L` with `L = log₂ dim` on
/// random pairs: half i.i.d. Gaussian Hermitian, half graph Hamiltonians.
pub fn lemma_s1_check(n_trials: usize, dim: usize, betas: &[f64], seed: u64) -> Result<LemmaS1Report> {
    if !dim.is_power_of_two() || dim < 2 || dim > 1 << 10 {
        return param(format!("dim must be a power of two in [2, 1024], got {dim}"));
    }
    if betas.iter().any(|&b| !(b > 0.0)) {
        return param("every beta must be positive");
    }
    let l = dim.trailing_zeros() as usize;
    let mut report = LemmaS1Report {
        trials: n_trials,
        dim,
        betas: betas.to_vec(),
        checks: 0,
        violations: 0,
        max_ratio: 0.0,
    };
    for t in 0..n_trials {
        let cell = RngSeed::new(seed, t as u64);
        let (ea, eb, ed) = if t % 2 == 0 {
            let mut rng = cell.rng();
            let (ar, ai) = random_hermitian(dim, &mut rng);
            let (br, bi) = random_hermitian(dim, &mut rng);
            (
                hermitian_eigenvalues(&ar, &ai)?,
                hermitian_eigenvalues(&br, &bi)?,
                hermitian_eigenvalues(&(&ar - &br), &(&ai - &bi))?,
            )
        } else {
            let (a, b) = structured_pair(l, cell)?;
            (
                symmetric_eigenvalues(&a)?,
                symmetric_eigenvalues(&b)?,
                symmetric_eigenvalues(&(&a - &b))?,
            )
        };
        let dmax = ed.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let bound = dmax / l as f64;
        for &beta in betas {
            let gap = (free_energy_density(&ea, l, beta)? - free_energy_density(&eb, l, beta)?).abs();
            report.checks += 1;
            if gap > bound + 1e-9 {
                report.violations += 1;
            }
            if bound > 0.0 {
                report.max_ratio = report.max_ratio.max(gap / bound);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_example() {
        let l = 1;
        let fa = free_energy_density(&[1.0, 0.0], l, 1.0).unwrap();
        let fb = free_energy_density(&[0.0, 0.0], l, 1.0).unwrap();
        let gap = (fa - fb).abs();
        assert!((gap - (2f64.ln() - (1.0 + (-1f64).exp()).ln())).abs() < 1e-12);
        assert!((gap - 0.379_885_493_041_722_3).abs() < 1e-12);
        assert!(gap <= 1.0);
    }

    #[test]
    fn hermitian_embedding() {
        // [[0, −i], [i, 0]] has eigenvalues ±1.
        let re = DMatrix::zeros(2, 2);
        let im = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let ev = hermitian_eigenvalues(&re, &im).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn no_violations_small() {
        let r = lemma_s1_check(40, 16, &[0.1, 1.0, 10.0, 100.0], 3).unwrap();
        assert_eq!(r.checks, 160);
        assert_eq!(r.violations, 0);
        assert!(r.max_ratio <= 1.0 + 1e-9);
    }

    #[test]
    fn bad_dim() {
        assert!(lemma_s1_check(1, 12, &[1.0], 0).is_err());
    }
}
