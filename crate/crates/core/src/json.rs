//! Canonical graph JSON and cube-certificate JSON.
//!
//! ```json
//! {"vertices":[{"id":"x0","m":1.0}],"edges":[{"u":"x0","v":"y1","w":1.0}]}
//! ```
//!
//! Output is canonical: vertices in identifier order, each edge once with
//! `u < v`, edges in lexicographic order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::recognizer::{subset_elements, CubeLabeling};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexJson {
    pub id: String,
    pub m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub u: String,
    pub v: String,
    pub w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
}

impl GraphJson {
    pub fn from_graph(g: &WeightedGraph) -> Self {
        GraphJson {
            vertices: (0..g.len())
                .map(|v| VertexJson {
                    id: g.id(v).to_owned(),
                    m: g.measure(v),
                })
                .collect(),
            edges: g
                .edges()
                .map(|(u, v, w)| EdgeJson {
                    u: g.id(u).to_owned(),
                    v: g.id(v).to_owned(),
                    w,
                })
                .collect(),
        }
    }

    pub fn into_graph(self) -> Result<WeightedGraph> {
        WeightedGraph::new(
            self.vertices.into_iter().map(|v| (v.id, v.m)).collect(),
            self.edges.into_iter().map(|e| (e.u, e.v, e.w)).collect(),
        )
    }
}

pub fn graph_from_json(text: &str) -> Result<WeightedGraph> {
    serde_json::from_str::<GraphJson>(text)
        .map_err(|e| Error::Parse(e.to_string()))?
        .into_graph()
}

pub fn graph_to_json(g: &WeightedGraph) -> String {
    serde_json::to_string_pretty(&GraphJson::from_graph(g)).expect("graph JSON serializes")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    #[serde(rename = "D")]
    pub dimension: usize,
    pub root: String,
    pub labels: BTreeMap<String, Vec<usize>>,
}

impl CertificateJson {
    pub fn from_labeling(g: &WeightedGraph, labeling: &CubeLabeling) -> Self {
        CertificateJson {
            dimension: labeling.dimension,
            root: g.id(labeling.root).to_owned(),
            labels: labeling
                .labels
                .iter()
                .enumerate()
                .filter_map(|(v, l)| l.map(|l| (g.id(v).to_owned(), subset_elements(l))))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{hypercube, laborde_hebbare};

    #[test]
    fn round_trip() {
        let g = laborde_hebbare();
        assert_eq!(graph_from_json(&graph_to_json(&g)).unwrap(), g);
    }

    #[test]
    fn rejects_unknown_keys_and_garbage() {
        let text = r#"{"vertices":[{"id":"a","m":1.0,"x":2}],"edges":[]}"#;
        assert!(matches!(graph_from_json(text), Err(Error::Parse(_))));
        assert!(matches!(
            graph_from_json("{\"vertices\":["),
            Err(Error::Parse(_))
        ));
        let bad = r#"{"vertices":[{"id":"a","m":1.0}],"edges":[{"u":"a","v":"a","w":1.0}]}"#;
        assert_eq!(
            graph_from_json(bad).unwrap_err(),
            Error::SelfLoop("a".into())
        );
    }

    #[test]
    fn certificate_shape() {
        let g = hypercube(2).unwrap();
        let lab = crate::recognizer::recognize(&g, 0).unwrap().unwrap();
        let cert = CertificateJson::from_labeling(&g, &lab);
        let text = serde_json::to_string(&cert).unwrap();
        assert!(text.starts_with(r#"{"D":2,"root":"00","labels":{"00":[],"#));
        assert_eq!(cert.labels["11"], vec![1, 2]);
    }
}
