use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{param, Result};
use crate::rng::RngSeed;

/// Largest L for which all bipartitions are enumerated.
pub const MAX_EXHAUSTIVE_L: usize = 24;

/// Number of edges with endpoints on different sides.
pub fn cut_size(g: &Graph, side: &[bool]) -> Result<usize> {
    if side.len() != g.num_vertices() {
        return param(format!(
            "side assignment has length {}, graph has {} vertices",
            side.len(),
            g.num_vertices()
        ));
    }
    Ok(g.edges().iter().filter(|&&(u, v)| side[u] != side[v]).count())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutScanMode {
    Exhaustive,
    Sampled { n: usize, seed: RngSeed },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutScanResult {
    pub l: usize,
    pub m: i64,
    /// max over scanned cuts of |N_AB − p(L² − M²)/4|
    pub max_abs_deviation: f64,
    pub n_cuts_scanned: u64,
    pub exhaustive: bool,
}

/// Scan bipartitions with side sizes (L+M)/2 and (L−M)/2 and report the
/// largest deviation of the cut size from its ER expectation.
pub fn cut_deviation_scan(g: &Graph, p: f64, m: i64, mode: CutScanMode) -> Result<CutScanResult> {
    let l = g.num_vertices();
    if m.unsigned_abs() as usize > l || (l as i64 + m) % 2 != 0 {
        return param(format!("magnetization {m} infeasible for L = {l}"));
    }
    if l > 64 {
        return param("cut scans support at most 64 vertices");
    }
    let size_a = ((l as i64 + m) / 2) as usize;
    let mean = p * ((l * l) as f64 - (m * m) as f64) / 4.0;
    let adj = g.adjacency_masks();
    let full: u64 = if l == 64 { u64::MAX } else { (1u64 << l) - 1 };
    let cut_of = |set: u64| -> u64 {
        let mut total = 0u64;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            total += u64::from((adj[v] & !set & full).count_ones());
        }
        total
    };
    let mut worst = 0.0f64;
    let mut scanned = 0u64;
    let exhaustive = matches!(mode, CutScanMode::Exhaustive);
    match mode {
        CutScanMode::Exhaustive => {
            if l > MAX_EXHAUSTIVE_L {
                return param(format!(
                    "exhaustive cut scan limited to L <= {MAX_EXHAUSTIVE_L}"
                ));
            }
            for set in SubsetsOfSize::new(l, size_a) {
                worst = worst.max((cut_of(set) as f64 - mean).abs());
                scanned += 1;
            }
        }
        CutScanMode::Sampled { n, seed } => {
            let mut rng = seed.rng();
            let mut verts: Vec<usize> = (0..l).collect();
            for _ in 0..n {
                verts.shuffle(&mut rng);
                let set = verts[..size_a].iter().fold(0u64, |s, &v| s | 1 << v);
                worst = worst.max((cut_of(set) as f64 - mean).abs());
                scanned += 1;
            }
        }
    }
    Ok(CutScanResult {
        l,
        m,
        max_abs_deviation: worst,
        n_cuts_scanned: scanned,
        exhaustive,
    })
}

/// All `k`-subsets of `0..n` as bitmasks, in increasing order (Gosper).
struct SubsetsOfSize {
    next: Option<u64>,
    limit: u64,
}

impl SubsetsOfSize {
    fn new(n: usize, k: usize) -> Self {
        let next = if k > n {
            None
        } else if k == 0 {
            Some(0)
        } else {
            Some(if k == 64 { u64::MAX } else { (1u64 << k) - 1 })
        };
        let limit = if n >= 64 { u64::MAX } else { 1u64 << n };
        SubsetsOfSize { next, limit }
    }
}

impl Iterator for SubsetsOfSize {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        if cur == 0 {
            self.next = None;
            return Some(0);
        }
        let c = cur & cur.wrapping_neg();
        let r = cur.wrapping_add(c);
        let succ = if r == 0 { None } else { Some((((r ^ cur) >> 2) / c) | r) };
        self.next = succ.filter(|&s| s < self.limit && s > cur);
        Some(cur)
    }
}

/// Edge density N_E/L² and cross-edge fraction α of the cut ensemble.
pub fn expected_cut_params(lambda: f64, p1: f64, p2: f64) -> (f64, f64) {
    let cross = lambda * (1.0 - lambda);
    let density = p1 * (lambda * lambda - lambda + 0.5) + p2 * cross;
    let within = p1 * lambda * lambda + p1 * (1.0 - lambda) * (1.0 - lambda);
    let denom = within + 2.0 * p2 * cross;
    let alpha = if denom > 0.0 { 2.0 * p2 * cross / denom } else { 0.0 };
    (density, alpha)
}
