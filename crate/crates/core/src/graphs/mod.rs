//! Simple graphs, the random ensembles drawn on them, cuts and site
//! orderings.

mod cuts;
mod degree;
mod ensemble;
mod io;
mod ordering;

pub use cuts::{cut_deviation_scan, cut_size, expected_cut_params, CutScanMode, CutScanResult};
pub use degree::{havel_hakimi, is_graphical};
pub use ensemble::{generate, EnsembleSpec};
pub(crate) use ensemble::cut_set_size as ensemble_cut_size;
pub use io::{read_graph, write_graph};
pub use ordering::{site_ordering, OrderingKind};

use crate::error::{param, Error, Result};

/// Undirected simple graph on vertices `0..l`.
///
/// Edges are stored as `(u, v)` with `u < v`, strictly sorted. The optional
/// partition labels each vertex with set 0 (A) or 1 (B).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    l: usize,
    edges: Vec<(usize, usize)>,
    partition: Option<Vec<u8>>,
}

impl Graph {
    /// Build a graph from an arbitrary edge list; pairs are normalized to
    /// `u < v` and sorted. Self-loops, duplicates and out-of-range vertices
    /// are rejected.
    pub fn new(l: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        edges.sort_unstable();
        let g = Graph {
            l,
            edges,
            partition: None,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn with_partition(mut self, partition: Vec<u8>) -> Result<Self> {
        if partition.len() != self.l {
            return param(format!(
                "partition has {} labels for {} vertices",
                partition.len(),
                self.l
            ));
        }
        if partition.iter().any(|&t| t > 1) {
            return param("partition labels must be 0 or 1");
        }
        self.partition = Some(partition);
        Ok(self)
    }

    pub fn complete(l: usize) -> Self {
        let edges = (0..l).flat_map(|u| (u + 1..l).map(move |v| (u, v))).collect();
        Graph {
            l,
            edges,
            partition: None,
        }
    }

    pub fn chain(l: usize) -> Self {
        let edges = (1..l).map(|v| (v - 1, v)).collect();
        Graph {
            l,
            edges,
            partition: None,
        }
    }

    /// Checks every structural invariant.
    pub fn validate(&self) -> Result<()> {
        if self.l == 0 {
            return param("graph needs at least one vertex");
        }
        for w in self.edges.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Data(format!("duplicate or unsorted edge {:?}", w[1])));
            }
        }
        for &(u, v) in &self.edges {
            if u == v {
                return Err(Error::Data(format!("self-loop at vertex {u}")));
            }
            if u > v || v >= self.l {
                return Err(Error::Data(format!(
                    "edge ({u}, {v}) out of range for L = {}",
                    self.l
                )));
            }
        }
        if let Some(p) = &self.partition {
            if p.len() != self.l || p.iter().any(|&t| t > 1) {
                return Err(Error::Data("malformed partition".into()));
            }
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.l
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn partition(&self) -> Option<&[u8]> {
        self.partition.as_deref()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.l];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&key).is_ok()
    }

    /// Neighbour sets as bitmasks; only valid for `l <= 64`.
    pub(crate) fn adjacency_masks(&self) -> Vec<u64> {
        debug_assert!(self.l <= 64);
        let mut adj = vec![0u64; self.l];
        for &(u, v) in &self.edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let mut nbrs = vec![Vec::new(); self.l];
        for &(u, v) in &self.edges {
            nbrs[u].push(v);
            nbrs[v].push(u);
        }
        let mut seen = vec![false; self.l];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &nbrs[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.l
    }
}
