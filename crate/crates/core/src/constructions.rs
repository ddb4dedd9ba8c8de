//! The explicit two-edge-colorings of complete multipartite graphs and the
//! case analysis that accompanies them.
//!
//! All colorings share one skeleton. The main parts of a layer are arranged
//! in a square grid of `grid_side` blocks by `grid_side` offsets; within a
//! layer an edge gets color 1 when its parts share a block or share an
//! offset, color 2 otherwise. An edge between two different layers gets the
//! opposite of the color its endpoints' parts carry within a single layer.
//! Non-square part counts keep a square grid and hang the extra parts off
//! the first supergroups in two batches: within a layer an extra part meets
//! its supergroup's block and its batch peers with color 1 and everything
//! else with color 2 (see [`MixedEdgeReading`]). A remainder part (smaller
//! than the main part size) joins with color 2 toward its matching layer
//! and color 1 elsewhere.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{self, BoundsError};
use crate::graph::{
    EdgeColoring, GraphError, MultipartiteGraph, MultipartiteSpec, VertexId,
};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("need at least {min} main parts, got {got}")]
    TooFewParts { got: u32, min: u32 },
    #[error("grid side must be at least 2, got {0}")]
    SideTooSmall(u32),
    #[error("part size must be at least 1")]
    ZeroPartSize,
    #[error("remainder part must be at least 1 (use the general coloring for p = 0)")]
    ZeroRemainder,
    #[error("remainder part must be smaller than the part size (p={remainder}, r={part_size})")]
    RemainderTooLarge { remainder: u32, part_size: u32 },
    #[error("main parts are not uniform")]
    NonUniformParts,
    #[error("n={n} is below the threshold {threshold} for k={k}")]
    BelowThreshold { n: u32, k: u32, threshold: u64 },
    #[error("cannot classify a vertex against itself")]
    SameVertex,
    #[error("vertex {0} does not belong to this construction")]
    VertexOutOfRange(VertexId),
    #[error("dense id {id} out of range ({n} vertices)")]
    DenseOutOfRange { id: u32, n: u32 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

// ============================================================================
// Parameters and classification
// ============================================================================

/// Uniform layout parameters of a constructed graph: `main_parts` parts of
/// size `part_size` plus a remainder part of size `remainder_size`.
///
/// The derived `grid_side` is the side of the square block grid; the
/// `extra_parts` beyond the grid (at most `2 * grid_side` of them by the
/// floor-square-root choice) are attached to the first supergroups in two
/// batches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionParams {
    main_parts: u32,
    part_size: u32,
    remainder_size: u32,
    grid_side: u32,
}

impl ConstructionParams {
    pub fn new(
        main_parts: u32,
        part_size: u32,
        remainder_size: u32,
    ) -> Result<Self, ConstructionError> {
        if main_parts < 2 {
            return Err(ConstructionError::TooFewParts {
                got: main_parts,
                min: 2,
            });
        }
        if part_size == 0 {
            return Err(ConstructionError::ZeroPartSize);
        }
        if remainder_size > 0 && remainder_size >= part_size {
            return Err(ConstructionError::RemainderTooLarge {
                remainder: remainder_size,
                part_size,
            });
        }
        Ok(ConstructionParams {
            main_parts,
            part_size,
            remainder_size,
            grid_side: (main_parts as u64).isqrt() as u32,
        })
    }

    /// Derives parameters from a decoded document when its main parts are
    /// uniform.
    pub fn from_spec(spec: &MultipartiteSpec) -> Result<Self, ConstructionError> {
        let part_size = spec
            .uniform_part_size()
            .ok_or(ConstructionError::NonUniformParts)?;
        Self::new(
            spec.part_sizes.len() as u32,
            part_size,
            spec.remainder_size,
        )
    }

    pub fn main_parts(&self) -> u32 {
        self.main_parts
    }

    pub fn part_size(&self) -> u32 {
        self.part_size
    }

    pub fn remainder_size(&self) -> u32 {
        self.remainder_size
    }

    pub fn grid_side(&self) -> u32 {
        self.grid_side
    }

    /// Parts beyond the square grid; zero exactly when `main_parts` is a
    /// perfect square.
    pub fn extra_parts(&self) -> u32 {
        self.main_parts - self.grid_side * self.grid_side
    }

    pub fn vertex_count(&self) -> u32 {
        self.main_parts * self.part_size + self.remainder_size
    }

    pub fn spec(&self) -> MultipartiteSpec {
        MultipartiteSpec::uniform(self.main_parts, self.part_size, self.remainder_size)
            .expect("validated parameters always form a valid spec")
    }

    fn is_base_part(&self, part: u32) -> bool {
        part <= self.grid_side * self.grid_side
    }

    /// Block row of a base part within the grid, 1-based.
    fn block_of_base(&self, part: u32) -> u32 {
        (part - 1) / self.grid_side + 1
    }

    /// Offset column of a base part within the grid, 1-based.
    fn offset_of_base(&self, part: u32) -> u32 {
        (part - 1) % self.grid_side + 1
    }

    /// Batch of an extra part: 1 for the first `grid_side` extras, 2 after.
    fn batch_of_extra(&self, part: u32) -> u32 {
        let i = part - self.grid_side * self.grid_side;
        if i <= self.grid_side {
            1
        } else {
            2
        }
    }

    /// Supergroup index of any main part, 1-based. Base parts follow their
    /// block row; extra part `i` joins supergroup `i` (first batch) or
    /// `i - grid_side` (second batch).
    pub fn supergroup_of_part(&self, part: u32) -> u32 {
        if self.is_base_part(part) {
            self.block_of_base(part)
        } else {
            let i = part - self.grid_side * self.grid_side;
            if i <= self.grid_side {
                i
            } else {
                i - self.grid_side
            }
        }
    }

    /// Alignment class used by the cross-group case split: base parts align
    /// by grid offset, extra parts by batch. The two ranges are disjoint, so
    /// a base part never aligns with an extra part.
    fn alignment_class(&self, part: u32) -> u32 {
        if self.is_base_part(part) {
            self.offset_of_base(part)
        } else {
            self.grid_side + self.batch_of_extra(part)
        }
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), ConstructionError> {
        let ok = match v {
            VertexId::Main { part, layer } => {
                (1..=self.main_parts).contains(&part) && (1..=self.part_size).contains(&layer)
            }
            VertexId::Remainder { index } => (1..=self.remainder_size).contains(&index),
        };
        if ok {
            Ok(())
        } else {
            Err(ConstructionError::VertexOutOfRange(v))
        }
    }

    /// Coordinates of a dense id under the uniform layout (main parts in
    /// order, remainder vertices last). Matches `MultipartiteGraph` built
    /// from `self.spec()`.
    pub fn vertex_of_dense(&self, dense: u32) -> Result<VertexId, ConstructionError> {
        let main_total = self.main_parts * self.part_size;
        if dense < main_total {
            Ok(VertexId::Main {
                part: dense / self.part_size + 1,
                layer: dense % self.part_size + 1,
            })
        } else if dense < self.vertex_count() {
            Ok(VertexId::Remainder {
                index: dense - main_total + 1,
            })
        } else {
            Err(ConstructionError::DenseOutOfRange {
                id: dense,
                n: self.vertex_count(),
            })
        }
    }

    /// Assigns a vertex pair to its proof case. Total and mutually
    /// exclusive over all distinct pairs of the constructed graph.
    pub fn classify(&self, u: VertexId, v: VertexId) -> Result<PairCase, ConstructionError> {
        if u == v {
            return Err(ConstructionError::SameVertex);
        }
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let (s1, j1, s2, j2) = match (u, v) {
            (VertexId::Main { part: s1, layer: j1 }, VertexId::Main { part: s2, layer: j2 }) => {
                (s1, j1, s2, j2)
            }
            _ => return Ok(PairCase::RemainderPair),
        };
        Ok(if s1 == s2 {
            PairCase::SamePart
        } else if j1 == j2 {
            PairCase::SameLayerGroup
        } else if self.supergroup_of_part(s1) == self.supergroup_of_part(s2) {
            PairCase::SameSuperGroup
        } else if self.alignment_class(s1) == self.alignment_class(s2) {
            PairCase::CrossGroupAligned
        } else {
            PairCase::CrossGroupGeneral
        })
    }
}

/// The proof cases a vertex pair can fall into.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "snake_case")]
pub enum PairCase {
    /// Both vertices in the same part (hence different layers).
    SamePart,
    /// Different parts, same layer.
    SameLayerGroup,
    /// Different parts and layers, same supergroup.
    SameSuperGroup,
    /// Different supergroups and layers, aligned offsets.
    CrossGroupAligned,
    /// Different supergroups and layers, different offsets.
    CrossGroupGeneral,
    /// At least one endpoint in the remainder part.
    RemainderPair,
}

impl PairCase {
    pub const ALL: [PairCase; 6] = [
        PairCase::SamePart,
        PairCase::SameLayerGroup,
        PairCase::SameSuperGroup,
        PairCase::CrossGroupAligned,
        PairCase::CrossGroupGeneral,
        PairCase::RemainderPair,
    ];
}

impl fmt::Display for PairCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            PairCase::SamePart => "same_part",
            PairCase::SameLayerGroup => "same_layer_group",
            PairCase::SameSuperGroup => "same_super_group",
            PairCase::CrossGroupAligned => "cross_group_aligned",
            PairCase::CrossGroupGeneral => "cross_group_general",
            PairCase::RemainderPair => "remainder_pair",
        };
        f.write_str(name)
    }
}

/// Guaranteed number of internally disjoint rainbow paths for a pair of the
/// given case, in a grid coloring with side `side` and part size
/// `part_size`. Exact integer evaluation of the per-case counting formulas;
/// the verifier's measured counts are lower-bounded by these.
pub fn case_lower_bound(case: PairCase, side: u32, part_size: u32) -> u64 {
    assert!(side >= 2, "the case formulas assume a grid side of at least 2");
    let l = side as i64;
    let r = part_size as i64;
    let value = match case {
        PairCase::SamePart => 2 * (l * l - 1),
        PairCase::SameLayerGroup => r * (l - 2) + 1,
        PairCase::SameSuperGroup | PairCase::CrossGroupAligned => {
            1 + (2 * l + r - 2) * (l - 2)
        }
        PairCase::CrossGroupGeneral => 5 + (2 * l + r - 6) * (l - 2),
        // The remainder analysis has three chains (toward the matching
        // layer, toward other layers, and between remainder vertices); the
        // guarantee for the whole case is their minimum.
        PairCase::RemainderPair => [
            1 + 2 * r * (l - 1),
            1 + (l - 1) * (2 * l + 2 * r - 6),
            2 * l * l,
        ]
        .into_iter()
        .min()
        .unwrap(),
    };
    debug_assert!(value >= 0);
    value as u64
}

// ============================================================================
// Colorings
// ============================================================================

/// How to color the within-layer edges between a base-grid vertex and an
/// extra-part vertex, where the coloring rules leave room for
/// interpretation. [`DEFAULT_MIXED_EDGE_READING`] is used by all public
/// constructors; the alternatives exist so the verifier can arbitrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MixedEdgeReading {
    /// Mixed edges fall through to the catch-all: color 2. Fails
    /// verification as soon as two extra parts share a batch: their
    /// same-layer pairs keep only the direct edge.
    OtherEdgesColorTwo,
    /// An extra part inherits membership in its supergroup's block: color 1
    /// toward that block, color 2 elsewhere. This is the reading under
    /// which every part count verifies, and it matches the blocks being
    /// updated to absorb the new parts.
    BlockMembership,
    /// An extra part behaves like the first column of its supergroup's
    /// block: color 1 toward that block and toward offset-1 parts.
    OffsetAligned,
}

pub const DEFAULT_MIXED_EDGE_READING: MixedEdgeReading = MixedEdgeReading::BlockMembership;

impl MixedEdgeReading {
    /// Candidate readings in arbitration order.
    pub const CANDIDATES: [MixedEdgeReading; 3] = [
        MixedEdgeReading::OtherEdgesColorTwo,
        MixedEdgeReading::BlockMembership,
        MixedEdgeReading::OffsetAligned,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MixedEdgeReading::OtherEdgesColorTwo => "other_edges_color_two",
            MixedEdgeReading::BlockMembership => "block_membership",
            MixedEdgeReading::OffsetAligned => "offset_aligned",
        }
    }
}

/// A constructed graph together with its two-coloring and layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub graph: MultipartiteGraph,
    pub coloring: EdgeColoring,
    pub params: ConstructionParams,
}

/// Color both parts would carry within a single layer: 1 when they share a
/// block or an offset (extras: a batch), 2 otherwise. Mixed base/extra
/// pairs follow `reading`.
fn within_layer_color(params: &ConstructionParams, reading: MixedEdgeReading, s1: u32, s2: u32) -> u32 {
    debug_assert_ne!(s1, s2);
    match (params.is_base_part(s1), params.is_base_part(s2)) {
        (true, true) => {
            let same_block = params.block_of_base(s1) == params.block_of_base(s2);
            let same_offset = params.offset_of_base(s1) == params.offset_of_base(s2);
            if same_block || same_offset {
                1
            } else {
                2
            }
        }
        (false, false) => {
            if params.batch_of_extra(s1) == params.batch_of_extra(s2) {
                1
            } else {
                2
            }
        }
        (base_first, _) => {
            let (base, extra) = if base_first { (s1, s2) } else { (s2, s1) };
            let in_block = params.block_of_base(base) == params.supergroup_of_part(extra);
            match reading {
                MixedEdgeReading::OtherEdgesColorTwo => 2,
                MixedEdgeReading::BlockMembership => {
                    if in_block {
                        1
                    } else {
                        2
                    }
                }
                MixedEdgeReading::OffsetAligned => {
                    if in_block || params.offset_of_base(base) == 1 {
                        1
                    } else {
                        2
                    }
                }
            }
        }
    }
}

fn build_two_coloring(
    params: ConstructionParams,
    reading: MixedEdgeReading,
) -> Result<Construction, ConstructionError> {
    let graph = MultipartiteGraph::build(params.spec())?;
    let coloring = EdgeColoring::from_fn(graph.graph(), 2, |du, dv| {
        let u = params.vertex_of_dense(du).expect("dense id within graph");
        let v = params.vertex_of_dense(dv).expect("dense id within graph");
        match (u, v) {
            (
                VertexId::Main { part: s1, layer: j1 },
                VertexId::Main { part: s2, layer: j2 },
            ) => {
                let within = within_layer_color(&params, reading, s1, s2);
                if j1 == j2 {
                    within
                } else {
                    3 - within
                }
            }
            // A remainder vertex w_j meets its matching layer with color 2
            // and everything else with color 1. Remainder pairs are
            // non-edges, so only mixed pairs reach this arm.
            (VertexId::Remainder { index }, VertexId::Main { layer, .. })
            | (VertexId::Main { layer, .. }, VertexId::Remainder { index }) => {
                if layer == index {
                    2
                } else {
                    1
                }
            }
            (VertexId::Remainder { .. }, VertexId::Remainder { .. }) => {
                unreachable!("remainder vertices are mutually non-adjacent")
            }
        }
    })?;
    Ok(Construction {
        graph,
        coloring,
        params,
    })
}

/// Two-coloring of the complete multipartite graph with `side * side` parts
/// of size `part_size`, the square case of the grid coloring.
pub fn color_square_multipartite(
    side: u32,
    part_size: u32,
) -> Result<Construction, ConstructionError> {
    if side < 2 {
        return Err(ConstructionError::SideTooSmall(side));
    }
    if part_size == 0 {
        return Err(ConstructionError::ZeroPartSize);
    }
    let params = ConstructionParams::new(side * side, part_size, 0)?;
    debug_assert_eq!(params.grid_side(), side);
    build_two_coloring(params, DEFAULT_MIXED_EDGE_READING)
}

/// Two-coloring of the complete multipartite graph with `parts` equal parts,
/// square or not. At a perfect square this is edge-for-edge the square
/// coloring.
pub fn color_general_multipartite(
    parts: u32,
    part_size: u32,
) -> Result<Construction, ConstructionError> {
    color_general_multipartite_with_reading(parts, part_size, DEFAULT_MIXED_EDGE_READING)
}

/// Like [`color_general_multipartite`], with an explicit choice for the
/// mixed-edge rule.
pub fn color_general_multipartite_with_reading(
    parts: u32,
    part_size: u32,
    reading: MixedEdgeReading,
) -> Result<Construction, ConstructionError> {
    if parts < 4 {
        return Err(ConstructionError::TooFewParts { got: parts, min: 4 });
    }
    if part_size == 0 {
        return Err(ConstructionError::ZeroPartSize);
    }
    build_two_coloring(ConstructionParams::new(parts, part_size, 0)?, reading)
}

/// Extends the general coloring with a remainder part of size
/// `1 <= remainder < part_size`.
pub fn color_with_remainder_part(
    parts: u32,
    part_size: u32,
    remainder: u32,
) -> Result<Construction, ConstructionError> {
    if parts < 4 {
        return Err(ConstructionError::TooFewParts { got: parts, min: 4 });
    }
    if part_size == 0 {
        return Err(ConstructionError::ZeroPartSize);
    }
    if remainder == 0 {
        return Err(ConstructionError::ZeroRemainder);
    }
    if remainder >= part_size {
        return Err(ConstructionError::RemainderTooLarge {
            remainder,
            part_size,
        });
    }
    build_two_coloring(
        ConstructionParams::new(parts, part_size, remainder)?,
        DEFAULT_MIXED_EDGE_READING,
    )
}

/// The spanning multipartite decomposition of the `n`-vertex complete graph
/// for target connectivity `k`: writes `n = parts * r0 + p` with `p < r0`
/// and returns the matching coloring. Requires `n` at or above the
/// [`bounds::complete_graph_threshold`] for `k`.
pub fn color_complete(n: u32, k: u32) -> Result<Construction, ConstructionError> {
    let row = bounds::complete_graph_threshold(k as u64)?;
    if (n as u64) < row.threshold {
        return Err(ConstructionError::BelowThreshold {
            n,
            k,
            threshold: row.threshold,
        });
    }
    let r0 = row.part_size as u32;
    let parts = n / r0;
    let p = n % r0;
    if p == 0 {
        color_general_multipartite(parts, r0)
    } else {
        color_with_remainder_part(parts, r0, p)
    }
}

/// Completes a construction to the full complete graph on the same
/// vertices: missing intra-part edges are added with color 1. Extra edges
/// only add rainbow paths, so a verified construction stays verified.
pub fn extend_to_complete(
    c: &Construction,
) -> Result<(MultipartiteGraph, EdgeColoring), ConstructionError> {
    let n = c.graph.vertex_count();
    let spec = MultipartiteSpec::uniform(n, 1, 0)?;
    let complete = MultipartiteGraph::build(spec)?;
    let coloring = EdgeColoring::from_fn(complete.graph(), 2, |u, v| {
        if c.graph.graph().has_edge(u, v) {
            c.coloring.color(u, v).expect("existing edge is colored")
        } else {
            1
        }
    })?;
    Ok((complete, coloring))
}

// ============================================================================
// Tests
// ============================================================================
