use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{param, Result};

/// How graph vertices are laid out on a line of sites (used for the
/// bipartite entropy and for correlation images).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderingKind {
    #[default]
    Identity,
    /// Set A first, then set B.
    CutBlocks,
    /// Highest degree in the middle, degree falling off towards both ends.
    IrregularCenter,
}

/// Returns `order` with `order[position] = vertex`.
pub fn site_ordering(g: &Graph, kind: OrderingKind) -> Result<Vec<usize>> {
    let l = g.num_vertices();
    match kind {
        OrderingKind::Identity => Ok((0..l).collect()),
        OrderingKind::CutBlocks => {
            let Some(tag) = g.partition() else {
                return param("cut_blocks ordering needs a partitioned graph");
            };
            let mut order: Vec<usize> = (0..l).filter(|&v| tag[v] == 0).collect();
            order.extend((0..l).filter(|&v| tag[v] == 1));
            Ok(order)
        }
        OrderingKind::IrregularCenter => {
            let degrees = g.degrees();
            let mut by_degree: Vec<usize> = (0..l).collect();
            by_degree.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]).then(a.cmp(&b)));

            // Positions by distance from the centre, left before right on
            // ties; the last two slots must be L-1 then 0 so that the two
            // lowest degrees land on the ends.
            let center = l / 2;
            let mut slots: Vec<usize> = (0..l).collect();
            slots.sort_by_key(|&p| (p.abs_diff(center), p));
            if l >= 2 && slots[l - 1] != 0 {
                slots.swap(l - 2, l - 1);
            }
            let mut order = vec![0; l];
            for (slot, vertex) in slots.into_iter().zip(by_degree) {
                order[slot] = vertex;
            }
            Ok(order)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{generate, EnsembleSpec};
    use crate::rng::RngSeed;

    #[test]
    fn identity() {
        let g = Graph::chain(5);
        assert_eq!(site_ordering(&g, OrderingKind::Identity).unwrap(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn antiregular_center() {
        let g = generate(&EnsembleSpec::Antiregular, 5, 0.into()).unwrap();
        let deg = g.degrees();
        let order = site_ordering(&g, OrderingKind::IrregularCenter).unwrap();
        assert_eq!(deg[order[2]], 4);
        assert_eq!(deg[order[0]], 1);
        assert_eq!(deg[order[4]], 2);
        for l in 4..=20 {
            let g = generate(&EnsembleSpec::Antiregular, l, 0.into()).unwrap();
            let deg = g.degrees();
            let order = site_ordering(&g, OrderingKind::IrregularCenter).unwrap();
            let mut sorted = order.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..l).collect::<Vec<_>>());
            assert_eq!(deg[order[l / 2]], l - 1);
            assert_eq!(deg[order[0]], 1, "L = {l}");
            assert_eq!(deg[order[l - 1]], 2, "L = {l}");
            // degree never increases moving away from the centre
            for p in 0..l / 2 {
                assert!(deg[order[p]] <= deg[order[p + 1]], "L = {l}");
            }
            for p in l / 2..l - 1 {
                assert!(deg[order[p]] >= deg[order[p + 1]], "L = {l}");
            }
        }
    }

    #[test]
    fn cut_blocks() {
        let spec = EnsembleSpec::Cut { lambda: 0.5, p1: 0.5, p2: 1.0 };
        let g = generate(&spec, 10, RngSeed::new(1, 1)).unwrap();
        let order = site_ordering(&g, OrderingKind::CutBlocks).unwrap();
        let tag = g.partition().unwrap();
        assert!(order[..5].iter().all(|&v| tag[v] == 0));
        assert!(site_ordering(&Graph::complete(4), OrderingKind::CutBlocks).is_err());
    }
}
