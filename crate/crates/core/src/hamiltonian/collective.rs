use nalgebra::DMatrix;

use super::CouplingParams;
use crate::error::{param, Result};
use crate::graphs::ensemble_cut_size;

/// Dense operator for two collective spins, A (maximal spin λL/2) and
/// B (maximal spin (1−λ)L/2), that replaces a cut-ensemble Hamiltonian by
/// its ensemble average.
///
/// Every pair inside a set contributes with probability `p1` and every
/// cross pair with `p2`; the edge count is replaced by its expectation
/// `N̄ = p1 [C(a,2) + C(b,2)] + p2 a b`. Within the maximal-spin space the
/// pair sums are exact functions of the collective operators, so for
/// `p1 = p2` and `λ = 1/2` the spectrum coincides with the complete graph
/// restricted to the same space.
#[derive(Debug, Clone)]
pub struct CollectivePairOperator {
    pub l: usize,
    pub size_a: usize,
    pub size_b: usize,
    pub matrix: DMatrix<f64>,
}

/// Collective spin matrices `(S^x, K, S^z)` for spin `two_s / 2`, with
/// `S^y = −i K`. Basis index `k` carries `m = k − S`.
fn spin_matrices(two_s: usize) -> (DMatrix<f64>, DMatrix<f64>, DMatrix<f64>) {
    let n = two_s + 1;
    let s = two_s as f64 / 2.0;
    let mut sp = DMatrix::zeros(n, n);
    for k in 0..two_s {
        let m = k as f64 - s;
        sp[(k + 1, k)] = (s * (s + 1.0) - m * (m + 1.0)).sqrt();
    }
    let sm = sp.transpose();
    let sx = (&sp + &sm) * 0.5;
    let k = (&sp - &sm) * 0.5;
    let sz = DMatrix::from_fn(n, n, |i, j| if i == j { i as f64 - s } else { 0.0 });
    (sx, k, sz)
}

pub fn build_collective_pair(
    l: usize,
    lambda: f64,
    p1: f64,
    p2: f64,
    params: &CouplingParams,
) -> Result<CollectivePairOperator> {
    params.validate()?;
    if params.two_s != 1 {
        return param("collective pair operator is defined for spin-1/2 sites");
    }
    if !(lambda > 0.0 && lambda < 1.0) {
        return param(format!("lambda = {lambda} outside (0, 1)"));
    }
    let exact = lambda * l as f64;
    if (exact - exact.round()).abs() > 1e-9 {
        return param(format!("lambda * L = {exact} is not an integer"));
    }
    let a = ensemble_cut_size(lambda, l);
    let b = l - a;
    let pairs_within = (a * a.saturating_sub(1) / 2 + b * b.saturating_sub(1) / 2) as f64;
    let mean_edges = p1 * pairs_within + p2 * (a * b) as f64;
    if mean_edges <= 0.0 {
        return param("expected edge count is zero");
    }
    let t = if params.pauli { 2.0 } else { 1.0 };
    let scale = l as f64 / mean_edges * t * t;

    let (ax, ak, az) = spin_matrices(a);
    let (bx, bk, bz) = spin_matrices(b);
    let ia = DMatrix::<f64>::identity(a + 1, a + 1);
    let ib = DMatrix::<f64>::identity(b + 1, b + 1);
    // Index = k_A + (a+1) k_B, i.e. kron(B, A).
    let on_a = |m: &DMatrix<f64>| ib.kronecker(m);
    let on_b = |m: &DMatrix<f64>| m.kronecker(&ia);

    let (xa, xb) = (on_a(&ax), on_b(&bx));
    let (ka, kb) = (on_a(&ak), on_b(&bk));
    let (za, zb) = (on_a(&az), on_b(&bz));
    let dim = (a + 1) * (b + 1);
    let eye = DMatrix::<f64>::identity(dim, dim);

    // Σ_{pairs in A} s^α s^α = ((S_A^α)² − a/4) / 2 for spin-1/2 sites.
    let self_a = a as f64 / 4.0;
    let self_b = b as f64 / 4.0;
    let within = |sa2: DMatrix<f64>, sb2: DMatrix<f64>| {
        (sa2 - &eye * self_a + sb2 - &eye * self_b) * (p1 / 2.0)
    };
    let xx = within(&xa * &xa, &xb * &xb) + &xa * &xb * p2;
    // S^y = −i K, so (S^y)² = −K² and S^y_A S^y_B = −K_A K_B.
    let yy = within(-(&ka * &ka), -(&kb * &kb)) - &ka * &kb * p2;
    let zz = within(&za * &za, &zb * &zb) + &za * &zb * p2;

    let mut matrix = (xx * params.jx + yy * params.jy + zz * params.jz) * scale;
    let wz = params.wz_at(l);
    if params.wx != 0.0 {
        matrix += (&xa + &xb) * (params.wx * t);
    }
    if wz != 0.0 {
        matrix += (&za + &zb) * (wz * t);
    }
    Ok(CollectivePairOperator {
        l,
        size_a: a,
        size_b: b,
        matrix,
    })
}

impl super::LinearOperator for CollectivePairOperator {
    fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.matrix.apply(x, y)
    }

    fn to_dense(&self) -> DMatrix<f64> {
        self.matrix.clone()
    }
}
