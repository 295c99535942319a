//! Graph JSON files: `{"L": int, "edges": [[u, v], ...], "partition": [...]}`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::Result;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    #[serde(rename = "L")]
    l: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    partition: Option<Vec<u8>>,
}

impl Graph {
    pub fn to_json(&self) -> String {
        let file = GraphFile {
            l: self.num_vertices(),
            edges: self.edges().iter().map(|&(u, v)| [u, v]).collect(),
            partition: self.partition().map(<[u8]>::to_vec),
        };
        serde_json::to_string(&file).expect("graph serializes")
    }

    /// Parse and validate; edges must already be sorted with `u < v`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text)?;
        let g = Graph {
            l: file.l,
            edges: file.edges.into_iter().map(|[u, v]| (u, v)).collect(),
            partition: file.partition,
        };
        g.validate()?;
        Ok(g)
    }
}

pub fn write_graph(g: &Graph, path: &Path) -> Result<()> {
    crate::ensemble::write_atomic(path, g.to_json().as_bytes())
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    Graph::from_json(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_order_and_roundtrip() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap().with_partition(vec![0, 0, 1]).unwrap();
        let s = g.to_json();
        assert_eq!(s, r#"{"L":3,"edges":[[0,1],[1,2]],"partition":[0,0,1]}"#);
        assert_eq!(Graph::from_json(&s).unwrap(), g);
        let plain = Graph::chain(2).to_json();
        assert_eq!(plain, r#"{"L":2,"edges":[[0,1]]}"#);
    }

    #[test]
    fn reader_validates() {
        assert!(Graph::from_json(r#"{"L":3,"edges":[[1,0]]}"#).is_err());
        assert!(Graph::from_json(r#"{"L":3,"edges":[[0,1],[0,1]]}"#).is_err());
        assert!(Graph::from_json(r#"{"L":3,"edges":[[0,3]]}"#).is_err());
        assert!(Graph::from_json(r#"{"L":3,"edges":[],"extra":1}"#).is_err());
        assert!(Graph::from_json(r#"{"L":3,"edges":[],"partition":[0,1]}"#).is_err());
    }
}
