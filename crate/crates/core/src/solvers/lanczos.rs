use nalgebra::DMatrix;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::LinearOperator;
use crate::linalg::symmetric_eigen;
use crate::rng::RngSeed;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LanczosOptions {
    /// Target residual norm ‖Av − θv‖.
    pub tol: f64,
    /// Total matrix-vector products allowed across restarts.
    pub max_iter: usize,
    /// Krylov dimension before an explicit restart.
    pub krylov_dim: usize,
    pub seed: RngSeed,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        LanczosOptions {
            tol: 1e-10,
            max_iter: 5000,
            krylov_dim: 100,
            seed: RngSeed::new(0x5eed, 0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Lowest,
    Highest,
}

#[derive(Debug, Clone)]
pub struct Eigenpair {
    pub value: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
    pub matvecs: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// One extreme eigenpair by Lanczos with full reorthogonalization and
/// explicit restarts from the current Ritz vector.
pub fn lanczos(op: &dyn LinearOperator, which: Which, opts: &LanczosOptions) -> Result<Eigenpair> {
    let n = op.dim();
    if n == 0 {
        return Err(Error::Parameter("empty operator".into()));
    }
    let mut rng = opts.seed.rng();
    let mut start: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let s = norm(&start);
    start.iter_mut().for_each(|x| *x /= s);

    let mut matvecs = 0usize;
    let mut best_residual = f64::INFINITY;
    let mut w = vec![0.0; n];
    loop {
        let mut basis: Vec<Vec<f64>> = vec![start.clone()];
        let mut alphas: Vec<f64> = Vec::new();
        let mut betas: Vec<f64> = Vec::new();
        let max_k = opts.krylov_dim.max(2).min(n);
        let (theta, v) = loop {
            let k = basis.len() - 1;
            op.apply(&basis[k], &mut w);
            matvecs += 1;
            let alpha = dot(&basis[k], &w);
            alphas.push(alpha);
            // Two passes of classical Gram-Schmidt against the whole basis.
            for _ in 0..2 {
                for q in &basis {
                    let c = dot(q, &w);
                    w.iter_mut().zip(q).for_each(|(wi, qi)| *wi -= c * qi);
                }
            }
            let beta = norm(&w);

            let m = alphas.len();
            let t = DMatrix::from_fn(m, m, |i, j| {
                if i == j {
                    alphas[i]
                } else if i + 1 == j {
                    betas[i]
                } else if j + 1 == i {
                    betas[j]
                } else {
                    0.0
                }
            });
            let (values, vectors) = symmetric_eigen(&t)?;
            let pick = match which {
                Which::Lowest => 0,
                Which::Highest => m - 1,
            };
            let theta = values[pick];
            let y = vectors.column(pick).clone_owned();
            let residual = (beta * y[m - 1]).abs();
            let invariant = beta <= 1e-14 * (1.0 + theta.abs());
            let done = residual <= opts.tol || invariant || m == n;
            if done || m >= max_k || matvecs >= opts.max_iter {
                let mut v = vec![0.0; n];
                for (i, q) in basis.iter().enumerate().take(m) {
                    v.iter_mut().zip(q).for_each(|(vi, qi)| *vi += y[i] * qi);
                }
                let s = norm(&v);
                v.iter_mut().for_each(|x| *x /= s);
                break (theta, v);
            }
            betas.push(beta);
            let next: Vec<f64> = w.iter().map(|x| x / beta).collect();
            basis.push(next);
        };
        // Residual from the vector itself, not the recurrence estimate.
        op.apply(&v, &mut w);
        matvecs += 1;
        let true_residual = w
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - theta * b).powi(2))
            .sum::<f64>()
            .sqrt();
        best_residual = best_residual.min(true_residual);
        if true_residual <= opts.tol.max(1e-13 * (1.0 + theta.abs())) {
            return Ok(Eigenpair {
                value: theta,
                vector: v,
                residual: true_residual,
                matvecs,
            });
        }
        if matvecs >= opts.max_iter {
            return Err(Error::NoConvergence {
                iterations: matvecs,
                residual: best_residual,
            });
        }
        start = v;
    }
}

/// Lowest eigenpair.
pub fn lanczos_lowest(op: &dyn LinearOperator, opts: &LanczosOptions) -> Result<Eigenpair> {
    lanczos(op, Which::Lowest, opts)
}

/// Eigenvalue of largest magnitude, sign preserved.
pub fn extreme_abs_eigenvalue(op: &dyn LinearOperator, opts: &LanczosOptions) -> Result<f64> {
    let lo = lanczos(op, Which::Lowest, opts)?;
    let hi = lanczos(op, Which::Highest, opts)?;
    Ok(if hi.value.abs() > lo.value.abs() {
        hi.value
    } else {
        lo.value
    })
}
