//! The shared graph+coloring document format and the DOT export.
//!
//! Documents are single-line JSON with a fixed field order and a mandatory
//! lexicographic edge order, so two documents describing the same object are
//! byte-identical. `color_count == 0` marks an uncolored document; colored
//! documents carry a color in `1..=color_count` on every edge.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeColoring, GraphError, MultipartiteGraph, MultipartiteSpec};

pub const DOCUMENT_VERSION: u32 = 1;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DocumentError {
    #[error("invalid document JSON: {0}")]
    Json(String),
    #[error("unsupported document version {0}")]
    Version(u32),
    #[error("edge list entry {index} is out of order or duplicated")]
    UnsortedEdges { index: usize },
    #[error("edge list entry {index} is not normalized (needs u < v)")]
    UnnormalizedEdge { index: usize },
    #[error("document lists {got} edges but the graph has {expected}")]
    WrongEdgeCount { got: usize, expected: usize },
    #[error("uncolored document carries a color on edge {u}-{v}")]
    UnexpectedColor { u: u32, v: u32 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Serialize, Deserialize)]
struct GraphDocument {
    version: u32,
    part_sizes: Vec<u32>,
    remainder_size: u32,
    color_count: u32,
    edges: Vec<(u32, u32, u32)>,
}

/// Serializes a graph, and optionally its coloring, to the canonical
/// document string.
pub fn encode(g: &MultipartiteGraph, coloring: Option<&EdgeColoring>) -> String {
    let edges = match coloring {
        Some(c) => c.colored_edges(),
        None => g.graph().edges().iter().map(|&(u, v)| (u, v, 0)).collect(),
    };
    let doc = GraphDocument {
        version: DOCUMENT_VERSION,
        part_sizes: g.spec().part_sizes.clone(),
        remainder_size: g.spec().remainder_size,
        color_count: coloring.map_or(0, |c| c.color_count()),
        edges,
    };
    serde_json::to_string(&doc).expect("document serialization cannot fail")
}

/// Parses and validates a document. The edge list must be sorted, cover
/// exactly the edges of the declared multipartite graph, and be either
/// fully colored or fully uncolored.
pub fn decode(text: &str) -> Result<(MultipartiteGraph, Option<EdgeColoring>), DocumentError> {
    let doc: GraphDocument =
        serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))?;
    if doc.version != DOCUMENT_VERSION {
        return Err(DocumentError::Version(doc.version));
    }
    let spec = MultipartiteSpec::new(doc.part_sizes, doc.remainder_size)?;
    let graph = MultipartiteGraph::build(spec)?;

    for (i, &(u, v, _)) in doc.edges.iter().enumerate() {
        if u >= v {
            return Err(DocumentError::UnnormalizedEdge { index: i });
        }
        if i > 0 && doc.edges[i - 1].0.cmp(&u).then(doc.edges[i - 1].1.cmp(&v)).is_ge() {
            return Err(DocumentError::UnsortedEdges { index: i });
        }
        if !graph.graph().are_adjacent(u, v)? {
            return Err(GraphError::NonEdge { u, v }.into());
        }
    }
    if doc.edges.len() != graph.edge_count() {
        return Err(DocumentError::WrongEdgeCount {
            got: doc.edges.len(),
            expected: graph.edge_count(),
        });
    }

    let coloring = if doc.color_count == 0 {
        if let Some(&(u, v, _)) = doc.edges.iter().find(|&&(_, _, c)| c != 0) {
            return Err(DocumentError::UnexpectedColor { u, v });
        }
        None
    } else {
        // from_triples rejects color 0 entries, which is exactly the
        // "partial coloring" error the format calls for.
        Some(EdgeColoring::from_triples(
            graph.graph(),
            doc.color_count,
            &doc.edges,
        )?)
    };
    Ok((graph, coloring))
}

const DOT_PALETTE: [&str; 8] = [
    "red",
    "blue",
    "forestgreen",
    "orange",
    "purple",
    "saddlebrown",
    "deepskyblue",
    "magenta",
];

/// Renders the graph in DOT format, one line per edge, with the color as an
/// edge attribute and coordinate vertex labels (`u3,2`, `w1`).
pub fn to_dot(g: &MultipartiteGraph, coloring: Option<&EdgeColoring>) -> String {
    let mut out = String::from("graph rck {\n");
    for (u, v) in g.graph().edges() {
        let lu = g.vertex_label(u).expect("edge endpoint is a valid vertex");
        let lv = g.vertex_label(v).expect("edge endpoint is a valid vertex");
        match coloring {
            Some(c) => {
                let color = c.color(u, v).expect("coloring is total on edges");
                let name = DOT_PALETTE[(color as usize - 1) % DOT_PALETTE.len()];
                out.push_str(&format!(
                    "  \"{lu}\" -- \"{lv}\" [label={color} color={name}];\n"
                ));
            }
            None => out.push_str(&format!("  \"{lu}\" -- \"{lv}\";\n")),
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MultipartiteSpec;

    fn k3_colored() -> (MultipartiteGraph, EdgeColoring) {
        let g = MultipartiteGraph::build(MultipartiteSpec::new(vec![1, 1, 1], 0).unwrap()).unwrap();
        let c = EdgeColoring::from_fn(g.graph(), 1, |_, _| 1).unwrap();
        (g, c)
    }

    #[test]
    fn round_trip_is_identity() {
        let (g, c) = k3_colored();
        let text = encode(&g, Some(&c));
        let (g2, c2) = decode(&text).unwrap();
        assert_eq!(g, g2);
        assert_eq!(Some(c), c2);
        assert_eq!(encode(&g2, c2.as_ref()), text, "re-encoding is byte-stable");
    }

    #[test]
    fn uncolored_round_trip() {
        let (g, _) = k3_colored();
        let text = encode(&g, None);
        let (g2, c2) = decode(&text).unwrap();
        assert_eq!(g, g2);
        assert_eq!(c2, None);
    }

    #[test]
    fn rejects_color_on_non_edge() {
        // Parts [2,2]: the pair (0,1) is intra-part, so coloring it is invalid.
        let text = r#"{"version":1,"part_sizes":[2,2],"remainder_size":0,"color_count":1,"edges":[[0,1,1],[0,2,1],[0,3,1],[1,2,1],[1,3,1]]}"#;
        let err = decode(text).unwrap_err();
        assert_eq!(err, DocumentError::Graph(GraphError::NonEdge { u: 0, v: 1 }));
    }

    #[test]
    fn rejects_missing_edge() {
        let text = r#"{"version":1,"part_sizes":[1,1,1],"remainder_size":0,"color_count":1,"edges":[[0,1,1],[0,2,1]]}"#;
        let err = decode(text).unwrap_err();
        assert_eq!(
            err,
            DocumentError::WrongEdgeCount {
                got: 2,
                expected: 3
            }
        );
    }

    #[test]
    fn rejects_partial_coloring() {
        let text = r#"{"version":1,"part_sizes":[1,1,1],"remainder_size":0,"color_count":2,"edges":[[0,1,1],[0,2,0],[1,2,1]]}"#;
        let err = decode(text).unwrap_err();
        assert!(matches!(
            err,
            DocumentError::Graph(GraphError::ColorOutOfRange { color: 0, .. })
        ));
    }

    #[test]
    fn rejects_unsorted_edges() {
        let text = r#"{"version":1,"part_sizes":[1,1,1],"remainder_size":0,"color_count":1,"edges":[[0,2,1],[0,1,1],[1,2,1]]}"#;
        let err = decode(text).unwrap_err();
        assert_eq!(err, DocumentError::UnsortedEdges { index: 1 });
    }

    #[test]
    fn rejects_unknown_version() {
        let text = r#"{"version":7,"part_sizes":[1,1],"remainder_size":0,"color_count":0,"edges":[[0,1,0]]}"#;
        assert_eq!(decode(text).unwrap_err(), DocumentError::Version(7));
    }

    #[test]
    fn dot_output_shape() {
        let (g, c) = k3_colored();
        let dot = to_dot(&g, Some(&c));
        assert!(dot.starts_with("graph rck {\n"));
        assert!(dot.contains("\"u1,1\" -- \"u2,1\" [label=1 color=red];"));
        assert_eq!(dot.lines().count(), 2 + g.edge_count());
    }
}
