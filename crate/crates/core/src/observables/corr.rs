use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::format::sig12;
use crate::graphs::Graph;
use crate::state::StateVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

/// `⟨σ^α_u σ^α_v⟩` for every ordered pair of sites.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    pub axis: Axis,
    l: usize,
    /// Row-major, indexed by position in `ordering`.
    values: Vec<f64>,
    /// `ordering[position] = vertex`.
    ordering: Vec<usize>,
}

impl CorrelationMatrix {
    pub fn l(&self) -> usize {
        self.l
    }

    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    /// Entry at positions `(i, j)`.
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.l + j]
    }

    /// Entry for vertices `(u, v)`, whatever the ordering.
    pub fn between(&self, u: usize, v: usize) -> f64 {
        let pos = |x: usize| self.ordering.iter().position(|&w| w == x).unwrap();
        self.at(pos(u), pos(v))
    }

    /// The same correlations laid out under another ordering.
    pub fn reordered(&self, ordering: &[usize]) -> Result<Self> {
        check_permutation(ordering, self.l)?;
        let mut by_vertex = vec![0.0; self.l * self.l];
        for i in 0..self.l {
            for j in 0..self.l {
                by_vertex[self.ordering[i] * self.l + self.ordering[j]] = self.at(i, j);
            }
        }
        let values = (0..self.l * self.l)
            .map(|k| by_vertex[ordering[k / self.l] * self.l + ordering[k % self.l]])
            .collect();
        Ok(CorrelationMatrix {
            axis: self.axis,
            l: self.l,
            values,
            ordering: ordering.to_vec(),
        })
    }

    /// Entries with `i ≠ j`, each unordered pair once.
    pub fn off_diagonal(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.l * (self.l.saturating_sub(1)) / 2);
        for i in 0..self.l {
            for j in i + 1..self.l {
                out.push(self.at(i, j));
            }
        }
        out
    }

    /// L lines of L comma-separated values in position order.
    pub fn write_csv(&self, mut w: impl Write) -> Result<()> {
        for i in 0..self.l {
            let row: Vec<String> = (0..self.l).map(|j| sig12(self.at(i, j))).collect();
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

fn check_permutation(ordering: &[usize], l: usize) -> Result<()> {
    let mut seen = vec![false; l];
    if ordering.len() != l {
        return param(format!("ordering has {} entries for {l} sites", ordering.len()));
    }
    for &v in ordering {
        if v >= l || seen[v] {
            return param("ordering is not a permutation of the sites");
        }
        seen[v] = true;
    }
    Ok(())
}

fn require_spin_half(state: &StateVector) -> Result<()> {
    if state.basis().two_s() != 1 {
        return param("correlations are implemented for spin-1/2 only");
    }
    state.require_normalized()
}

/// `⟨σ^α_u σ^α_v⟩` for one pair, `u ≠ v`.
fn pair_correlation(state: &StateVector, axis: Axis, u: usize, v: usize) -> f64 {
    let basis = state.basis();
    let amps = state.amplitudes();
    let (bu, bv) = (1u64 << u, 1u64 << v);
    match axis {
        Axis::Z => amps
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let c = basis.code(i);
                let same = ((c & bu) != 0) == ((c & bv) != 0);
                if same {
                    a * a
                } else {
                    -a * a
                }
            })
            .sum(),
        Axis::X | Axis::Y => amps
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let c = basis.code(i);
                let same = ((c & bu) != 0) == ((c & bv) != 0);
                let partner = match basis.index(c ^ bu ^ bv) {
                    Some(k) => amps[k],
                    None => return 0.0,
                };
                // σ^y σ^y differs from σ^x σ^x by −1 on parallel pairs.
                let sign = if axis == Axis::Y && same { -1.0 } else { 1.0 };
                sign * a * partner
            })
            .sum(),
    }
}

/// Two-point correlation matrix in vertex order.
pub fn corr_matrix(state: &StateVector, axis: Axis) -> Result<CorrelationMatrix> {
    require_spin_half(state)?;
    let l = state.l();
    let mut values = vec![0.0; l * l];
    for u in 0..l {
        values[u * l + u] = 1.0;
        for v in u + 1..l {
            let c = pair_correlation(state, axis, u, v);
            values[u * l + v] = c;
            values[v * l + u] = c;
        }
    }
    Ok(CorrelationMatrix {
        axis,
        l,
        values,
        ordering: (0..l).collect(),
    })
}

/// `(1/L) Σ_v ⟨σ^α_v⟩`. Real states have `⟨σ^y⟩ = 0`.
pub fn magnetization(state: &StateVector, axis: Axis) -> Result<f64> {
    require_spin_half(state)?;
    let l = state.l();
    let basis = state.basis();
    let amps = state.amplitudes();
    let total: f64 = match axis {
        Axis::Z => amps
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let up = basis.code(i).count_ones() as f64;
                a * a * (2.0 * up - l as f64)
            })
            .sum(),
        Axis::X => (0..l)
            .map(|v| {
                amps.iter()
                    .enumerate()
                    .map(|(i, a)| match basis.index(basis.code(i) ^ (1 << v)) {
                        Some(k) => a * amps[k],
                        None => 0.0,
                    })
                    .sum::<f64>()
            })
            .sum(),
        Axis::Y => 0.0,
    };
    Ok(total / l as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderParams {
    pub c_afm: f64,
    pub c_xy: f64,
}

/// `C_AFM = (1/N_E) Σ_edges ⟨σ^zσ^z⟩` and
/// `C_XY = (1/N_E) Σ_{v>v'} ⟨σ^xσ^x + σ^yσ^y⟩`. With `per_pair`, `C_XY` is
/// divided by the number of pairs instead of `N_E`.
pub fn order_params(state: &StateVector, g: &Graph, per_pair: bool) -> Result<OrderParams> {
    let zz = corr_matrix(state, Axis::Z)?;
    let xx = corr_matrix(state, Axis::X)?;
    let yy = corr_matrix(state, Axis::Y)?;
    order_params_from(&zz, &xx, &yy, g, per_pair)
}

/// As [`order_params`], from precomputed vertex-ordered matrices.
pub fn order_params_from(
    zz: &CorrelationMatrix,
    xx: &CorrelationMatrix,
    yy: &CorrelationMatrix,
    g: &Graph,
    per_pair: bool,
) -> Result<OrderParams> {
    let l = g.num_vertices();
    if zz.l() != l {
        return param(format!("state has {} sites, graph has {l}", zz.l()));
    }
    let ne = g.num_edges();
    if ne == 0 {
        return Err(Error::NoEdges);
    }
    let c_afm = g.edges().iter().map(|&(u, v)| zz.between(u, v)).sum::<f64>() / ne as f64;
    let mut inplane = 0.0;
    for u in 0..l {
        for v in u + 1..l {
            inplane += xx.between(u, v) + yy.between(u, v);
        }
    }
    let norm = if per_pair { (l * (l - 1) / 2) as f64 } else { ne as f64 };
    Ok(OrderParams {
        c_afm,
        c_xy: inplane / norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_up() {
        let s = StateVector::product(4, 0b1111);
        let zz = corr_matrix(&s, Axis::Z).unwrap();
        assert!((0..4).all(|i| (0..4).all(|j| zz.at(i, j) == 1.0)));
        assert_eq!(magnetization(&s, Axis::Z).unwrap(), 1.0);
        let op = order_params(&s, &Graph::chain(4), false).unwrap();
        assert_eq!((op.c_afm, op.c_xy), (1.0, 0.0));
    }

    #[test]
    fn neel_x_is_identity() {
        let s = StateVector::product(4, 0b0101);
        let xx = corr_matrix(&s, Axis::X).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(xx.at(i, j), if i == j { 1.0 } else { 0.0 });
            }
        }
        let op = order_params(&s, &Graph::chain(4), false).unwrap();
        assert_eq!((op.c_afm, op.c_xy), (-1.0, 0.0));
    }

    #[test]
    fn dicke_brute_force() {
        // Oracle: explicit Pauli matrices on the 16-dimensional space.
        let d = StateVector::dicke(4, 0).unwrap();
        let full = d.to_full();
        let a = full.amplitudes();
        let apply_pair = |u: usize, v: usize, axis: Axis| -> f64 {
            let mut acc = 0.0;
            for c in 0..16u64 {
                for c2 in 0..16u64 {
                    let mut elem = 1.0;
                    for site in 0..4 {
                        let (b, b2) = ((c >> site) & 1, (c2 >> site) & 1);
                        let on = site == u || site == v;
                        let e = match (on, axis) {
                            (false, _) => f64::from(u8::from(b == b2)),
                            (true, Axis::Z) => {
                                if b != b2 { 0.0 } else if b == 1 { 1.0 } else { -1.0 }
                            }
                            (true, Axis::X) => f64::from(u8::from(b != b2)),
                            // σ^y has entries ±i; products of two are real.
                            (true, Axis::Y) => {
                                if b == b2 { 0.0 } else if b2 == 1 { 1.0 } else { -1.0 }
                            }
                        };
                        elem *= e;
                    }
                    // Track the i·i = −1 of σ^y σ^y.
                    if axis == Axis::Y {
                        elem = -elem;
                    }
                    acc += a[c as usize] * elem * a[c2 as usize];
                }
            }
            acc
        };
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            let m = corr_matrix(&d, axis).unwrap();
            for u in 0..4 {
                for v in 0..4 {
                    if u != v {
                        assert!((m.at(u, v) - apply_pair(u, v, axis)).abs() < 1e-12);
                    }
                }
            }
        }
        let zz = corr_matrix(&d, Axis::Z).unwrap();
        assert!(zz.off_diagonal().iter().all(|&x| (x + 1.0 / 3.0).abs() < 1e-12));
        let op = order_params(&d, &Graph::complete(4), false).unwrap();
        assert!((op.c_xy - 4.0 / 3.0).abs() < 1e-12);
        let pp = order_params(&d, &Graph::complete(4), true).unwrap();
        assert!((pp.c_xy - 4.0 / 3.0).abs() < 1e-12);
        assert!(magnetization(&d, Axis::Z).unwrap().abs() < 1e-15);
    }

    #[test]
    fn x_polarized() {
        let s = StateVector::full(2, vec![0.5; 4]).unwrap();
        assert!((magnetization(&s, Axis::X).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn unnormalized_rejected() {
        let s = StateVector::full(2, vec![1.0; 4]).unwrap();
        assert!(corr_matrix(&s, Axis::Z).is_err());
    }

    #[test]
    fn reorder_roundtrip() {
        let s = StateVector::full(3, vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.1, 0.6, 0.2]).unwrap().normalized().unwrap();
        let m = corr_matrix(&s, Axis::X).unwrap();
        let r = m.reordered(&[2, 0, 1]).unwrap();
        assert_eq!(r.at(0, 1), m.at(2, 0));
        assert_eq!(r.between(1, 2), m.at(1, 2));
        assert_eq!(r.reordered(&[0, 1, 2]).unwrap(), m);
        assert!(m.reordered(&[0, 0, 1]).is_err());
    }

    #[test]
    fn csv_shape() {
        let m = corr_matrix(&StateVector::product(3, 0b101), Axis::Z).unwrap();
        let mut buf = Vec::new();
        m.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "1,-1,1\n-1,1,-1\n1,-1,1\n");
    }
}
