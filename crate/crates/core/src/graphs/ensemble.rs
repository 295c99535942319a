use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::{havel_hakimi, is_graphical, Graph};
use crate::error::{param, Error, Result};
use crate::rng::RngSeed;

/// Maximum number of degree redraws for the uniform-degree ensemble.
const MAX_DEGREE_DRAWS: usize = 1000;

/// Which graph (or random ensemble of graphs) to build.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum EnsembleSpec {
    Complete,
    Chain,
    /// Erdős–Rényi: every pair independently present with probability `p`.
    #[serde(rename = "er")]
    ErdosRenyi { p: f64 },
    /// Two sets, A of size ⌈λL⌉ and B; pairs inside a set are present with
    /// probability `p1`, pairs across with `p2`.
    Cut { lambda: f64, p1: f64, p2: f64 },
    /// Degrees drawn uniformly from `[deg_lo, deg_hi]` and realized by
    /// Havel–Hakimi. Missing bounds default to ⌈L/4⌉ and ⌊3L/4⌋.
    UniformDegree {
        #[serde(default)]
        deg_lo: Option<usize>,
        #[serde(default)]
        deg_hi: Option<usize>,
    },
    /// The maximally irregular graph: all degrees distinct except one pair.
    Antiregular,
}

impl EnsembleSpec {
    pub fn is_random(&self) -> bool {
        matches!(
            self,
            EnsembleSpec::ErdosRenyi { .. }
                | EnsembleSpec::Cut { .. }
                | EnsembleSpec::UniformDegree { .. }
        )
    }

    /// Degree bounds actually used at size `l`.
    pub fn degree_bounds(&self, l: usize) -> Option<(usize, usize)> {
        match *self {
            EnsembleSpec::UniformDegree { deg_lo, deg_hi } => Some((
                deg_lo.unwrap_or(l.div_ceil(4)),
                deg_hi.unwrap_or(3 * l / 4),
            )),
            _ => None,
        }
    }

    pub fn validate(&self, l: usize) -> Result<()> {
        if l == 0 {
            return param("L must be positive");
        }
        let unit = |name: &str, x: f64| {
            if (0.0..=1.0).contains(&x) {
                Ok(())
            } else {
                param(format!("{name} = {x} outside [0, 1]"))
            }
        };
        match *self {
            EnsembleSpec::ErdosRenyi { p } => {
                if !(p > 0.0 && p <= 1.0) {
                    return param(format!("ER edge probability {p} outside (0, 1]"));
                }
            }
            EnsembleSpec::Cut { lambda, p1, p2 } => {
                if !(lambda > 0.0 && lambda < 1.0) {
                    return param(format!("lambda = {lambda} outside (0, 1)"));
                }
                unit("p1", p1)?;
                unit("p2", p2)?;
            }
            EnsembleSpec::UniformDegree { .. } => {
                let (lo, hi) = self.degree_bounds(l).unwrap();
                if !(0 < lo && lo <= hi && hi < l) {
                    return param(format!(
                        "degree bounds [{lo}, {hi}] invalid for L = {l}"
                    ));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Short label used in CSV output, free of commas.
    pub fn label(&self) -> String {
        match *self {
            EnsembleSpec::Complete => "complete".into(),
            EnsembleSpec::Chain => "chain".into(),
            EnsembleSpec::ErdosRenyi { p } => format!("er(p={p})"),
            EnsembleSpec::Cut { lambda, p1, p2 } => {
                format!("cut(lambda={lambda};p1={p1};p2={p2})")
            }
            EnsembleSpec::UniformDegree { deg_lo, deg_hi } => match (deg_lo, deg_hi) {
                (None, None) => "uniform_degree".into(),
                _ => format!(
                    "uniform_degree(lo={};hi={})",
                    deg_lo.map_or("auto".into(), |d| d.to_string()),
                    deg_hi.map_or("auto".into(), |d| d.to_string())
                ),
            },
            EnsembleSpec::Antiregular => "antiregular".into(),
        }
    }
}

/// Size of set A in a cut graph: ⌈λL⌉, tolerant of floating-point noise in
/// λL.
pub(crate) fn cut_set_size(lambda: f64, l: usize) -> usize {
    ((lambda * l as f64) - 1e-9).ceil().max(0.0) as usize
}

/// Draw one graph of `l` vertices from `spec`.
pub fn generate(spec: &EnsembleSpec, l: usize, seed: RngSeed) -> Result<Graph> {
    spec.validate(l)?;
    let mut rng = seed.rng();
    match *spec {
        EnsembleSpec::Complete => Ok(Graph::complete(l)),
        EnsembleSpec::Chain => Ok(Graph::chain(l)),
        EnsembleSpec::ErdosRenyi { p } => {
            let mut edges = Vec::new();
            for u in 0..l {
                for v in u + 1..l {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::new(l, edges)
        }
        EnsembleSpec::Cut { lambda, p1, p2 } => {
            let a = cut_set_size(lambda, l);
            let tag: Vec<u8> = (0..l).map(|v| u8::from(v >= a)).collect();
            let mut edges = Vec::new();
            for u in 0..l {
                for v in u + 1..l {
                    let p = if tag[u] == tag[v] { p1 } else { p2 };
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::new(l, edges)?.with_partition(tag)
        }
        EnsembleSpec::UniformDegree { .. } => {
            let (lo, hi) = spec.degree_bounds(l).unwrap();
            let mut degrees = vec![0; l];
            for _ in 0..MAX_DEGREE_DRAWS {
                for d in degrees.iter_mut() {
                    *d = rng.gen_range(lo..=hi);
                }
                if degrees.iter().sum::<usize>() % 2 == 0 && is_graphical(&degrees) {
                    return havel_hakimi(&degrees);
                }
            }
            Err(Error::Generation {
                reason: format!("no even, graphical sequence in {MAX_DEGREE_DRAWS} draws"),
                degrees,
            })
        }
        EnsembleSpec::Antiregular => {
            // 1-based rule i + j >= L + 1, i.e. 0-based u + v >= L - 1.
            let mut edges = Vec::new();
            for u in 0..l {
                for v in u + 1..l {
                    if u + v + 1 >= l {
                        edges.push((u, v));
                    }
                }
            }
            Graph::new(l, edges)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn complete_and_er_one() {
        let g = generate(&EnsembleSpec::Complete, 4, 0.into()).unwrap();
        assert_eq!(g.num_edges(), 6);
        for l in 1..=64 {
            let er = generate(&EnsembleSpec::ErdosRenyi { p: 1.0 }, l, RngSeed::new(9, l as u64)).unwrap();
            assert_eq!(er, Graph::complete(l));
        }
    }

    #[test]
    fn antiregular_l5() {
        let g = generate(&EnsembleSpec::Antiregular, 5, 0.into()).unwrap();
        let mut d = g.degrees();
        d.sort_unstable();
        assert_eq!(d, vec![1, 2, 2, 3, 4]);
    }

    #[test]
    fn antiregular_has_exactly_one_repeat() {
        for l in 3..=64 {
            let g = generate(&EnsembleSpec::Antiregular, l, 0.into()).unwrap();
            let mut counts: HashMap<usize, usize> = HashMap::new();
            for d in g.degrees() {
                *counts.entry(d).or_default() += 1;
            }
            let twice = counts.values().filter(|&&c| c == 2).count();
            assert_eq!(twice, 1, "L = {l}");
            assert!(counts.values().all(|&c| c <= 2), "L = {l}");
        }
    }

    #[test]
    fn cut_graph_blocks() {
        let spec = EnsembleSpec::Cut { lambda: 0.5, p1: 1.0, p2: 0.5 };
        let g = generate(&spec, 100, RngSeed::new(3, 0)).unwrap();
        let tag = g.partition().unwrap();
        assert_eq!(tag.iter().filter(|&&t| t == 0).count(), 50);
        for u in 0..100 {
            for v in u + 1..100 {
                if tag[u] == tag[v] {
                    assert!(g.has_edge(u, v));
                }
            }
        }
        let cross = g.edges().iter().filter(|&&(u, v)| tag[u] != tag[v]).count();
        assert!(cross > 1000 && cross < 1500, "{cross}");
    }

    #[test]
    fn determinism() {
        let spec = EnsembleSpec::ErdosRenyi { p: 0.3 };
        let a = generate(&spec, 40, RngSeed::new(11, 5)).unwrap();
        let b = generate(&spec, 40, RngSeed::new(11, 5)).unwrap();
        assert_eq!(a, b);
        let c = generate(&spec, 40, RngSeed::new(11, 6)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn uniform_degree_in_bounds() {
        let spec = EnsembleSpec::UniformDegree { deg_lo: None, deg_hi: None };
        assert_eq!(spec.degree_bounds(10), Some((3, 7)));
        for i in 0..20 {
            let g = generate(&spec, 30, RngSeed::new(1, i)).unwrap();
            assert!(g.degrees().iter().all(|&d| (8..=22).contains(&d)));
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(generate(&EnsembleSpec::ErdosRenyi { p: 0.0 }, 5, 0.into()).is_err());
        assert!(generate(&EnsembleSpec::Cut { lambda: 1.0, p1: 0.5, p2: 0.5 }, 5, 0.into()).is_err());
        let bad = EnsembleSpec::UniformDegree { deg_lo: Some(3), deg_hi: Some(5) };
        assert!(generate(&bad, 5, 0.into()).is_err());
    }

    #[test]
    fn er_density_concentrates() {
        let p = 0.5;
        let l = 400;
        let pairs = (l * (l - 1) / 2) as f64;
        let mut within = 0;
        for i in 0..100 {
            let g = generate(&EnsembleSpec::ErdosRenyi { p }, l, RngSeed::new(77, i)).unwrap();
            let density = g.num_edges() as f64 / (l as f64 * l as f64 / 2.0);
            if (density - p).abs() <= 5.0 / (l as f64).sqrt() {
                within += 1;
            }
            assert!((g.num_edges() as f64 / pairs - p).abs() < 0.02);
        }
        assert!(within >= 95);
    }
}
