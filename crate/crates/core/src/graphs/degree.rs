use super::Graph;
use crate::error::{Error, Result};

/// Index `k` (1-based) of the first violated Erdős–Gallai inequality, or
/// `Some(0)` for an odd degree sum, or `None` when the sequence is graphical.
fn first_violation(degrees: &[usize]) -> Option<usize> {
    let n = degrees.len();
    if degrees.iter().sum::<usize>() % 2 != 0 {
        return Some(0);
    }
    let mut d = degrees.to_vec();
    d.sort_unstable_by(|a, b| b.cmp(a));
    let mut lhs = 0usize;
    for k in 1..=n {
        lhs += d[k - 1];
        let rhs = k * (k - 1) + d[k..].iter().map(|&x| x.min(k)).sum::<usize>();
        if lhs > rhs {
            return Some(k);
        }
    }
    None
}

/// True iff `degrees` is the degree sequence of some simple graph.
pub fn is_graphical(degrees: &[usize]) -> bool {
    first_violation(degrees).is_none()
}

/// Realize a graphical degree sequence with the Havel–Hakimi construction.
///
/// The vertex with the largest remaining degree (lowest index on ties) is
/// joined to the next-largest remaining vertices, again lowest index first.
pub fn havel_hakimi(degrees: &[usize]) -> Result<Graph> {
    match first_violation(degrees) {
        None => {}
        Some(0) => {
            return Err(Error::Generation {
                reason: "odd degree sum".into(),
                degrees: degrees.to_vec(),
            })
        }
        Some(k) => return Err(Error::NotGraphical { index: k }),
    }
    let n = degrees.len();
    let mut remaining = degrees.to_vec();
    let mut edges = Vec::with_capacity(degrees.iter().sum::<usize>() / 2);
    let by_degree = |rem: &[usize]| {
        let mut idx: Vec<usize> = (0..n).filter(|&v| rem[v] > 0).collect();
        idx.sort_by(|&a, &b| rem[b].cmp(&rem[a]).then(a.cmp(&b)));
        idx
    };
    loop {
        let order = by_degree(&remaining);
        let Some((&hub, rest)) = order.split_first() else {
            break;
        };
        let d = remaining[hub];
        if rest.len() < d {
            // Unreachable for graphical input.
            return Err(Error::Generation {
                reason: "Havel-Hakimi ran out of partners".into(),
                degrees: degrees.to_vec(),
            });
        }
        remaining[hub] = 0;
        for &w in &rest[..d] {
            remaining[w] -= 1;
            edges.push((hub, w));
        }
    }
    Graph::new(n, edges)
}
