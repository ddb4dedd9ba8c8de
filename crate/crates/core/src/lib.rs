//! Explicit two-edge-colorings of complete multipartite graphs, an exact
//! verifier for internally disjoint rainbow paths, an exhaustive oracle for
//! tiny instances, and the threshold table they certify.
//!
//! The library is organized around one pipeline: [`constructions`] builds a
//! colored graph, [`verifier`] computes the exact number of internally
//! disjoint rainbow paths between every vertex pair and decides whether a
//! target connectivity `k` is met, and [`oracle`] provides independent
//! ground truth on desk-size inputs. [`bounds`] evaluates the order
//! thresholds that make the complete-graph decomposition work, and
//! [`document`] fixes the byte-stable interchange format the CLI speaks.

pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod document;
pub mod graph;
pub mod oracle;
pub mod verifier;

pub use bounds::{bounds_table, complete_graph_threshold, side_threshold, BoundsRow, BoundsTable};
pub use constructions::{
    case_lower_bound, color_complete, color_general_multipartite,
    color_general_multipartite_with_reading, color_square_multipartite,
    color_with_remainder_part, extend_to_complete, Construction, ConstructionParams,
    MixedEdgeReading, PairCase,
};
pub use document::{decode, encode, to_dot};
pub use graph::{EdgeColoring, Graph, GraphError, MultipartiteGraph, MultipartiteSpec, VertexId};
pub use oracle::{exact_rck, exhaustive_pair_table, OracleOptions, OracleResult};
pub use verifier::{
    check_certificate, check_certificate_detailed, count_disjoint_two_color, exact_pair_count,
    max_disjoint_rainbow_paths, rainbow_paths_between, verify_rck, DisjointPathCertificate,
    RainbowPath, VerificationReport,
};
