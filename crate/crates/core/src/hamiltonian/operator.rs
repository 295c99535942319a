use std::sync::Arc;

use nalgebra::DMatrix;
use rayon::prelude::*;

use super::{CouplingParams, SectorBasis};
use crate::error::{param, Error, Result};
use crate::graphs::Graph;

/// Default cap on the Hilbert-space dimension of a built operator.
pub const DEFAULT_MAX_DIM: u64 = 1 << 26;

/// Anything that can multiply a real vector.
pub trait LinearOperator: Sync {
    fn dim(&self) -> usize;

    /// `y = A x`; `y` is overwritten.
    fn apply(&self, x: &[f64], y: &mut [f64]);

    fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut out = DMatrix::zeros(n, n);
        let mut e = vec![0.0; n];
        let mut col = vec![0.0; n];
        for j in 0..n {
            e[j] = 1.0;
            self.apply(&e, &mut col);
            out.column_mut(j).copy_from_slice(&col);
            e[j] = 0.0;
        }
        out
    }
}

impl LinearOperator for DMatrix<f64> {
    fn dim(&self) -> usize {
        self.nrows()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = self.row(i).iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }

    fn to_dense(&self) -> DMatrix<f64> {
        self.clone()
    }
}

/// Basis an operator acts on: the full product space or one S^z sector.
#[derive(Debug, Clone)]
pub enum Basis {
    Full { l: usize, two_s: u8 },
    Sector(Arc<SectorBasis>),
}

impl Basis {
    pub fn l(&self) -> usize {
        match self {
            Basis::Full { l, .. } => *l,
            Basis::Sector(b) => b.l,
        }
    }

    pub fn two_s(&self) -> u8 {
        match self {
            Basis::Full { two_s, .. } => *two_s,
            Basis::Sector(b) => b.two_s,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Basis::Full { l, two_s } => (*two_s as usize + 1).pow(*l as u32),
            Basis::Sector(b) => b.len(),
        }
    }

    #[inline]
    pub fn code(&self, index: usize) -> u64 {
        match self {
            Basis::Full { .. } => index as u64,
            Basis::Sector(b) => b.states()[index],
        }
    }

    #[inline]
    pub fn index(&self, code: u64) -> Option<usize> {
        match self {
            Basis::Full { .. } => Some(code as usize),
            Basis::Sector(b) => b.index_of(code),
        }
    }

    pub fn sector(&self) -> Option<i64> {
        match self {
            Basis::Full { .. } => None,
            Basis::Sector(b) => Some(b.m),
        }
    }
}

/// Two-site term `weight · Σ_α J_α s^α_u s^α_v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bond {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// Matrix-free spin Hamiltonian over the computational basis.
///
/// Couplings are stored for canonical spin operators; the Pauli convention
/// is folded in at construction (×4 on two-site terms, ×2 on fields).
#[derive(Debug, Clone)]
pub struct SpinOperator {
    j: [f64; 3],
    wx: f64,
    wz: f64,
    bonds: Vec<Bond>,
    basis: Basis,
    conserves_sz: bool,
}

impl SpinOperator {
    /// Operator from explicit bond weights.
    pub fn from_bonds(
        l: usize,
        params: &CouplingParams,
        bonds: Vec<Bond>,
        with_fields: bool,
    ) -> Result<Self> {
        Self::from_bonds_capped(l, params, bonds, with_fields, DEFAULT_MAX_DIM)
    }

    pub fn from_bonds_capped(
        l: usize,
        params: &CouplingParams,
        bonds: Vec<Bond>,
        with_fields: bool,
        max_dim: u64,
    ) -> Result<Self> {
        params.validate()?;
        if l == 0 {
            return param("operator needs at least one site");
        }
        let needed = (f64::from(params.two_s) + 1.0).powi(l as i32);
        if needed > max_dim as f64 {
            return Err(Error::Capacity {
                what: "Hilbert-space dimension",
                needed: needed.min(u64::MAX as f64) as u64,
                cap: max_dim,
            });
        }
        if let Some(b) = bonds.iter().find(|b| b.u == b.v || b.u >= l || b.v >= l) {
            return param(format!("bad bond ({}, {})", b.u, b.v));
        }
        let two = if params.pauli { 2.0 } else { 1.0 };
        let (wx, wz) = if with_fields {
            (params.wx * two, params.wz_at(l) * two)
        } else {
            (0.0, 0.0)
        };
        Ok(SpinOperator {
            j: [params.jx * two * two, params.jy * two * two, params.jz * two * two],
            wx,
            wz,
            bonds: bonds.into_iter().filter(|b| b.weight != 0.0).collect(),
            basis: Basis::Full {
                l,
                two_s: params.two_s,
            },
            conserves_sz: params.jx == params.jy && wx == 0.0,
        })
    }

    /// Restrict to the sector with total magnetization `m` (Pauli units).
    pub fn in_sector(&self, m: i64) -> Result<Self> {
        if !self.conserves_sz {
            return param("operator does not conserve total S^z; sectors unavailable");
        }
        let basis = SectorBasis::new(self.l(), self.two_s(), m)?;
        Ok(SpinOperator {
            basis: Basis::Sector(Arc::new(basis)),
            ..self.clone()
        })
    }

    pub fn full_space(&self) -> Self {
        SpinOperator {
            basis: Basis::Full {
                l: self.l(),
                two_s: self.two_s(),
            },
            ..self.clone()
        }
    }

    pub fn l(&self) -> usize {
        self.basis.l()
    }

    pub fn two_s(&self) -> u8 {
        self.basis.two_s()
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    pub fn conserves_sz(&self) -> bool {
        self.conserves_sz
    }

    /// True when a uniform z field is present, which splits ±M sectors.
    pub fn has_z_field(&self) -> bool {
        self.wz != 0.0
    }

    /// Scaled copy (all couplings and fields times `factor`).
    pub fn scaled(&self, factor: f64) -> Self {
        SpinOperator {
            j: self.j.map(|x| x * factor),
            wx: self.wx * factor,
            wz: self.wz * factor,
            ..self.clone()
        }
    }

    /// Calls `emit(code', amplitude)` for every nonzero `⟨code'|H|code⟩`.
    fn for_each_element(&self, code: u64, mut emit: impl FnMut(u64, f64)) {
        if self.two_s() == 1 {
            self.spin_half_elements(code, &mut emit);
        } else {
            self.general_elements(code, &mut emit);
        }
    }

    #[inline]
    fn spin_half_elements(&self, code: u64, emit: &mut impl FnMut(u64, f64)) {
        let [jx, jy, jz] = self.j;
        let zz = jz / 4.0;
        let flip_parallel = (jx - jy) / 4.0;
        let flip_anti = (jx + jy) / 4.0;
        let mut diag = 0.0;
        for b in &self.bonds {
            let parallel = ((code >> b.u) ^ (code >> b.v)) & 1 == 0;
            let mask = (1u64 << b.u) | (1u64 << b.v);
            if parallel {
                diag += b.weight * zz;
                if flip_parallel != 0.0 {
                    emit(code ^ mask, b.weight * flip_parallel);
                }
            } else {
                diag -= b.weight * zz;
                if flip_anti != 0.0 {
                    emit(code ^ mask, b.weight * flip_anti);
                }
            }
        }
        if self.wz != 0.0 || self.wx != 0.0 {
            for v in 0..self.l() {
                let up = (code >> v) & 1 == 1;
                diag += if up { self.wz / 2.0 } else { -self.wz / 2.0 };
                if self.wx != 0.0 {
                    emit(code ^ (1u64 << v), self.wx / 2.0);
                }
            }
        }
        emit(code, diag);
    }

    fn general_elements(&self, code: u64, emit: &mut impl FnMut(u64, f64)) {
        let l = self.l();
        let two_s = u64::from(self.two_s());
        let base = two_s + 1;
        let s = two_s as f64 / 2.0;
        let mut digits = [0u64; 64];
        let mut place = [1u64; 64];
        let mut x = code;
        for v in 0..l {
            digits[v] = x % base;
            x /= base;
            if v + 1 < l {
                place[v + 1] = place[v] * base;
            }
        }
        let m = |d: u64| d as f64 - s;
        // <m+1| s+ |m>
        let raise = |d: u64| {
            let mm = m(d);
            (s * (s + 1.0) - mm * (mm + 1.0)).max(0.0).sqrt()
        };
        // <m-1| s- |m>
        let lower = |d: u64| {
            let mm = m(d);
            (s * (s + 1.0) - mm * (mm - 1.0)).max(0.0).sqrt()
        };
        let [jx, jy, jz] = self.j;
        let a = (jx + jy) / 4.0;
        let bcoef = (jx - jy) / 4.0;
        let mut diag = 0.0;
        for bond in &self.bonds {
            let (u, v, w) = (bond.u, bond.v, bond.weight);
            let (du, dv) = (digits[u], digits[v]);
            diag += w * jz * m(du) * m(dv);
            let up_u = du < two_s;
            let up_v = dv < two_s;
            let dn_u = du > 0;
            let dn_v = dv > 0;
            if a != 0.0 {
                if up_u && dn_v {
                    emit(code + place[u] - place[v], w * a * raise(du) * lower(dv));
                }
                if dn_u && up_v {
                    emit(code - place[u] + place[v], w * a * lower(du) * raise(dv));
                }
            }
            if bcoef != 0.0 {
                if up_u && up_v {
                    emit(code + place[u] + place[v], w * bcoef * raise(du) * raise(dv));
                }
                if dn_u && dn_v {
                    emit(code - place[u] - place[v], w * bcoef * lower(du) * lower(dv));
                }
            }
        }
        for v in 0..l {
            let d = digits[v];
            diag += self.wz * m(d);
            if self.wx != 0.0 {
                if d < two_s {
                    emit(code + place[v], self.wx / 2.0 * raise(d));
                }
                if d > 0 {
                    emit(code - place[v], self.wx / 2.0 * lower(d));
                }
            }
        }
        emit(code, diag);
    }

    /// Diagonal matrix elements in basis order.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim())
            .map(|i| {
                let code = self.basis.code(i);
                let mut d = 0.0;
                self.for_each_element(code, |c, amp| {
                    if c == code {
                        d += amp;
                    }
                });
                d
            })
            .collect()
    }

    fn row_dot(&self, i: usize, x: &[f64]) -> f64 {
        let code = self.basis.code(i);
        let mut acc = 0.0;
        match &self.basis {
            Basis::Full { .. } => self.for_each_element(code, |c, amp| acc += amp * x[c as usize]),
            Basis::Sector(b) => self.for_each_element(code, |c, amp| {
                // Amplitude leaving the sector is impossible for an S^z
                // conserving operator; the lookup simply fails for it.
                if let Some(j) = b.index_of(c) {
                    acc += amp * x[j];
                }
            }),
        }
        acc
    }
}

const ROWS_PER_TASK: usize = 1 << 12;

impl LinearOperator for SpinOperator {
    fn dim(&self) -> usize {
        self.basis.dim()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.dim());
        assert_eq!(y.len(), self.dim());
        // Rows are independent and each is summed in a fixed order, so the
        // result does not depend on scheduling.
        y.par_chunks_mut(ROWS_PER_TASK)
            .enumerate()
            .for_each(|(chunk, ys)| {
                let start = chunk * ROWS_PER_TASK;
                for (k, yi) in ys.iter_mut().enumerate() {
                    *yi = self.row_dot(start + k, x);
                }
            });
    }

    fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut out = DMatrix::zeros(n, n);
        for j in 0..n {
            let code = self.basis.code(j);
            self.for_each_element(code, |c, amp| {
                if let Some(i) = self.basis.index(c) {
                    out[(i, j)] += amp;
                }
            });
        }
        out
    }
}

/// The graph Hamiltonian `(L/N_E) Σ_edges h_uv + Σ_v w·s_v` on the full
/// basis.
pub fn build(g: &Graph, params: &CouplingParams) -> Result<SpinOperator> {
    build_capped(g, params, DEFAULT_MAX_DIM)
}

pub fn build_capped(g: &Graph, params: &CouplingParams, max_dim: u64) -> Result<SpinOperator> {
    if g.num_edges() == 0 {
        return Err(Error::NoEdges);
    }
    let weight = g.num_vertices() as f64 / g.num_edges() as f64;
    let bonds = g
        .edges()
        .iter()
        .map(|&(u, v)| Bond { u, v, weight })
        .collect();
    SpinOperator::from_bonds_capped(g.num_vertices(), params, bonds, true, max_dim)
}

/// `H(Complete) − H(g)` for a graph on the same vertex set. Fields cancel.
pub fn build_difference(g: &Graph, params: &CouplingParams) -> Result<SpinOperator> {
    if g.num_edges() == 0 {
        return Err(Error::NoEdges);
    }
    let l = g.num_vertices();
    let complete = 2.0 / (l as f64 - 1.0);
    let edge = l as f64 / g.num_edges() as f64;
    let mut bonds = Vec::with_capacity(l * (l - 1) / 2);
    for u in 0..l {
        for v in u + 1..l {
            let weight = if g.has_edge(u, v) {
                complete - edge
            } else {
                complete
            };
            bonds.push(Bond { u, v, weight });
        }
    }
    SpinOperator::from_bonds(l, params, bonds, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{generate, EnsembleSpec};
    use crate::hamiltonian::{preset_tfi, preset_xxz};
    use crate::rng::RngSeed;
    use rand::Rng;

    fn random_vec(n: usize, seed: u64) -> Vec<f64> {
        let mut r = RngSeed::new(seed, 99).rng();
        (0..n).map(|_| r.gen_range(-1.0..1.0)).collect()
    }

    fn dot(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    fn apply(op: &impl LinearOperator, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; x.len()];
        op.apply(x, &mut y);
        y
    }

    #[test]
    fn complete_graph_diagonal() {
        let p = CouplingParams { jz: 1.0, pauli: true, ..Default::default() };
        for l in 2..=14 {
            let op = build(&Graph::complete(l), &p).unwrap();
            let diag = op.diagonal();
            for (i, d) in diag.iter().enumerate() {
                let m = 2 * (i as u64).count_ones() as i64 - l as i64;
                let expect = ((m * m) as f64 - l as f64) / (l as f64 - 1.0);
                assert!((d - expect).abs() < 1e-12, "L={l} i={i}");
            }
            if l <= 8 {
                let dense = op.to_dense();
                let off: f64 = dense.iter().map(|x| x.abs()).sum::<f64>()
                    - diag.iter().map(|x| x.abs()).sum::<f64>();
                assert!(off.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn chain2_ising() {
        let p = CouplingParams { jz: 1.0, pauli: true, ..Default::default() };
        let op = build(&Graph::chain(2), &p).unwrap();
        let d = op.to_dense();
        let expect = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![2.0, -2.0, -2.0, 2.0]));
        assert!((d - expect).abs().max() < 1e-15);
    }

    #[test]
    fn zero_couplings_zero_operator() {
        let g = generate(&EnsembleSpec::ErdosRenyi { p: 0.5 }, 6, RngSeed::new(1, 1)).unwrap();
        let op = build(&g, &CouplingParams::default()).unwrap();
        assert_eq!(op.to_dense().abs().max(), 0.0);
    }

    #[test]
    fn no_edges_is_an_error() {
        let g = Graph::new(3, []).unwrap();
        assert!(matches!(build(&g, &preset_xxz(1.0, 1.0)), Err(Error::NoEdges)));
    }

    #[test]
    fn capacity_cap() {
        let g = Graph::complete(10);
        assert!(matches!(
            build_capped(&g, &preset_xxz(1.0, 1.0), 512),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn spin1_two_site_matrix() {
        // Hand-built 9x9 XYZ matrix for two spin-1 sites with J = (0.7, -0.3, 1.1).
        let (jx, jy, jz) = (0.7, -0.3, 1.1);
        let r2 = 2f64.sqrt();
        let sp = DMatrix::from_row_slice(3, 3, &[0.0, 0.0, 0.0, r2, 0.0, 0.0, 0.0, r2, 0.0]);
        // digit d maps to m = d - 1; basis index order is m = -1, 0, 1
        let sm = sp.transpose();
        let sx = (&sp + &sm) * 0.5;
        let sy_im = (&sp - &sm) * 0.5; // s^y = -i * sy_im
        let sz = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![-1.0, 0.0, 1.0]));
        // index = d_0 + 3 d_1, so site 1 is the slow index: kron(site1, site0)
        let kron = |a: &DMatrix<f64>, b: &DMatrix<f64>| a.kronecker(b);
        // s^y s^y = (-i A)(-i B) = -(A ⊗ B)
        let expect = (kron(&sx, &sx) * jx - kron(&sy_im, &sy_im) * jy + kron(&sz, &sz) * jz) * 2.0;
        let p = CouplingParams { jx, jy, jz, two_s: 2, ..Default::default() };
        let op = build(&Graph::chain(2), &p).unwrap();
        assert!((op.to_dense() - expect).abs().max() < 1e-14);
    }

    #[test]
    fn general_path_matches_spin_half_fast_path() {
        let g = generate(&EnsembleSpec::ErdosRenyi { p: 0.6 }, 7, RngSeed::new(4, 4)).unwrap();
        let p = CouplingParams { jx: 0.3, jy: -1.2, jz: 0.8, wx: 0.4, wz: -0.2, pauli: true, ..Default::default() };
        let op = build(&g, &p).unwrap();
        let fast = op.to_dense();
        let mut slow = DMatrix::zeros(op.dim(), op.dim());
        for j in 0..op.dim() {
            op.general_elements(j as u64, &mut |c, amp| slow[(c as usize, j)] += amp);
        }
        assert!((fast - slow).abs().max() < 1e-13);
    }

    #[test]
    fn hermitian_on_random_instances() {
        let kinds = [
            EnsembleSpec::ErdosRenyi { p: 0.5 },
            EnsembleSpec::Cut { lambda: 0.5, p1: 0.5, p2: 1.0 },
            EnsembleSpec::UniformDegree { deg_lo: None, deg_hi: None },
            EnsembleSpec::Antiregular,
            EnsembleSpec::Chain,
        ];
        let mut r = RngSeed::new(10, 0).rng();
        for (k, spec) in kinds.iter().enumerate() {
            for t in 0..50u64 {
                let l = 4 + (t as usize % 5);
                let g = generate(spec, l, RngSeed::new(k as u64, t)).unwrap();
                let p = CouplingParams {
                    jx: r.gen_range(-2.0..2.0),
                    jy: r.gen_range(-2.0..2.0),
                    jz: r.gen_range(-2.0..2.0),
                    wx: r.gen_range(-1.0..1.0),
                    wz: r.gen_range(-1.0..1.0),
                    two_s: if t % 7 == 0 { 2 } else { 1 },
                    pauli: t % 2 == 0,
                    ..Default::default()
                };
                let l = if p.two_s == 2 { l.min(6) } else { l };
                let g = if g.num_vertices() != l { generate(spec, l, RngSeed::new(k as u64, t)).unwrap() } else { g };
                let op = build(&g, &p).unwrap();
                let x = random_vec(op.dim(), t);
                let y = random_vec(op.dim(), t + 1000);
                let lhs = dot(&x, &apply(&op, &y));
                let rhs = dot(&y, &apply(&op, &x));
                assert!((lhs - rhs).abs() < 1e-12 * (1.0 + lhs.abs()), "{spec:?} t={t}");
            }
        }
    }

    #[test]
    fn sector_closure_and_consistency() {
        let g = generate(&EnsembleSpec::ErdosRenyi { p: 0.5 }, 8, RngSeed::new(3, 3)).unwrap();
        let op = build(&g, &preset_xxz(1.0, 1.3)).unwrap();
        let full = op.to_dense();
        for m in SectorBasis::magnetizations(8, 1) {
            let sec = op.in_sector(m).unwrap();
            let Basis::Sector(b) = sec.basis().clone() else { unreachable!() };
            // Every column of a sector state stays inside the sector.
            for &c in b.states() {
                for i in 0..full.nrows() {
                    if full[(i, c as usize)] != 0.0 {
                        assert!(b.index_of(i as u64).is_some());
                    }
                }
            }
            let dense = sec.to_dense();
            for (a, &ca) in b.states().iter().enumerate() {
                for (bb, &cb) in b.states().iter().enumerate() {
                    assert_eq!(dense[(a, bb)], full[(ca as usize, cb as usize)]);
                }
            }
        }
        assert!(build(&g, &preset_tfi(1.0, false)).unwrap().in_sector(0).is_err());
    }

    #[test]
    fn difference_is_complete_minus_graph() {
        let g = generate(&EnsembleSpec::ErdosRenyi { p: 0.5 }, 10, RngSeed::new(8, 1)).unwrap();
        let p = CouplingParams { jx: -1.0, jy: -0.4, jz: 1.5, pauli: true, ..Default::default() };
        let d = build_difference(&g, &p).unwrap();
        let hc = build(&Graph::complete(10), &p).unwrap();
        let hg = build(&g, &p).unwrap();
        for t in 0..20 {
            let x = random_vec(d.dim(), t);
            let dx = apply(&d, &x);
            let cx = apply(&hc, &x);
            let gx = apply(&hg, &x);
            for i in 0..x.len() {
                assert!((dx[i] - (cx[i] - gx[i])).abs() < 1e-12);
            }
        }
        let zero = build_difference(&Graph::complete(6), &p).unwrap();
        assert!(zero.bonds().is_empty());
        let single = build_difference(&Graph::chain(2), &p).unwrap();
        assert_eq!(single.to_dense().abs().max(), 0.0);
    }
}
