//! Simple undirected graphs on dense vertex ids, complete multipartite
//! graphs with part/layer coordinates, and total edge colorings.
//!
//! Vertex coordinates are 1-based (`u3,2` is the second vertex of the third
//! part); dense ids are 0-based and contiguous. The conversion between the
//! two lives entirely in [`VertexId`] and [`MultipartiteGraph`].

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from graph construction, coordinate lookups and coloring queries.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {id} out of range (graph has {n} vertices)")]
    InvalidVertex { id: u32, n: u32 },
    #[error("{u}-{v} is not an edge")]
    NonEdge { u: u32, v: u32 },
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: u32, v: u32 },
    #[error("specification has no parts")]
    EmptySpec,
    #[error("part {part} has size 0")]
    EmptyPart { part: u32 },
    #[error("graph would have {0} vertices, which is too many")]
    TooManyVertices(u64),
    #[error("no vertex with coordinates {0}")]
    InvalidCoordinate(VertexId),
    #[error("color {color} outside palette 1..={color_count}")]
    ColorOutOfRange { color: u32, color_count: u32 },
    #[error("edge {u}-{v} has no color")]
    MissingColor { u: u32, v: u32 },
    #[error("color count must be at least 1")]
    EmptyPalette,
}

/// Number of unordered vertex pairs of an `n`-vertex graph.
pub fn pair_count(n: u32) -> usize {
    let n = n as usize;
    n * n.saturating_sub(1) / 2
}

/// Index of the pair `(u, v)` with `u < v` in the lexicographic listing of
/// all unordered pairs: `(0,1), (0,2), ..., (0,n-1), (1,2), ...`
pub fn pair_index(n: u32, u: u32, v: u32) -> usize {
    debug_assert!(u < v && v < n);
    let (n, u, v) = (n as usize, u as usize, v as usize);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

/// All unordered pairs `(u, v)` with `u < v < n` in lexicographic order.
pub fn vertex_pairs(n: u32) -> impl Iterator<Item = (u32, u32)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

// ============================================================================
// Graph
// ============================================================================

/// Simple undirected graph on dense vertex ids `0..n`.
///
/// Adjacency is stored as bit-packed rows. Graphs are immutable after
/// construction and safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: u32,
    words_per_row: usize,
    rows: Vec<u64>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an explicit edge list.
    ///
    /// Rejects self-loops, duplicate edges (in either orientation) and
    /// out-of-range endpoints.
    pub fn from_edges(
        n: u32,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self, GraphError> {
        let words_per_row = (n as usize).div_ceil(64);
        let mut g = Graph {
            n,
            words_per_row,
            rows: vec![0u64; n as usize * words_per_row],
            edge_count: 0,
        };
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge {
                    u: u.min(v),
                    v: u.max(v),
                });
            }
            g.set_edge(u, v);
            g.edge_count += 1;
        }
        Ok(g)
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: u32) -> Self {
        Self::from_edges(n, vertex_pairs(n)).expect("complete graph edge list is valid")
    }

    /// Path on `n` vertices (`n - 1` edges), in dense-id order.
    pub fn path(n: u32) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edge list is valid")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: u32) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let edges = (1..n).map(|v| (v - 1, v)).chain(std::iter::once((n - 1, 0)));
        Self::from_edges(n, edges).expect("cycle edge list is valid")
    }

    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn check_vertex(&self, v: u32) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex { id: v, n: self.n })
        }
    }

    fn set_edge(&mut self, u: u32, v: u32) {
        let w = self.words_per_row;
        self.rows[u as usize * w + v as usize / 64] |= 1u64 << (v % 64);
        self.rows[v as usize * w + u as usize / 64] |= 1u64 << (u % 64);
    }

    /// Unchecked adjacency test; both ids must be in range.
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.rows[u as usize * self.words_per_row + v as usize / 64] & (1u64 << (v % 64)) != 0
    }

    /// Adjacency test with id validation.
    pub fn are_adjacent(&self, u: u32, v: u32) -> Result<bool, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(u != v && self.has_edge(u, v))
    }

    /// Neighbors of `v` in ascending dense-id order.
    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        let row = &self.rows[v as usize * self.words_per_row..][..self.words_per_row];
        row.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros();
                    w &= w - 1;
                    Some(i as u32 * 64 + b)
                }
            })
        })
    }

    pub fn degree(&self, v: u32) -> usize {
        let row = &self.rows[v as usize * self.words_per_row..][..self.words_per_row];
        row.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// All edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// True when every vertex is reachable from vertex 0 (vacuously true for
    /// graphs with fewer than 2 vertices).
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n as usize];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut reached = 1u32;
        while let Some(x) = stack.pop() {
            for y in self.neighbors(x) {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    reached += 1;
                    stack.push(y);
                }
            }
        }
        reached == self.n
    }
}

// ============================================================================
// Multipartite structure
// ============================================================================

/// Shape of a complete multipartite graph: the ordered main part sizes plus
/// an optional remainder part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultipartiteSpec {
    pub part_sizes: Vec<u32>,
    pub remainder_size: u32,
}

impl MultipartiteSpec {
    pub fn new(part_sizes: Vec<u32>, remainder_size: u32) -> Result<Self, GraphError> {
        let spec = MultipartiteSpec {
            part_sizes,
            remainder_size,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// `parts` main parts all of size `part_size`, plus a remainder part.
    pub fn uniform(parts: u32, part_size: u32, remainder_size: u32) -> Result<Self, GraphError> {
        Self::new(vec![part_size; parts as usize], remainder_size)
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        if self.part_sizes.is_empty() {
            return Err(GraphError::EmptySpec);
        }
        for (i, &size) in self.part_sizes.iter().enumerate() {
            if size == 0 {
                return Err(GraphError::EmptyPart { part: i as u32 + 1 });
            }
        }
        if self.vertex_count_u64() > u32::MAX as u64 / 2 {
            return Err(GraphError::TooManyVertices(self.vertex_count_u64()));
        }
        Ok(())
    }

    fn vertex_count_u64(&self) -> u64 {
        self.part_sizes.iter().map(|&s| s as u64).sum::<u64>() + self.remainder_size as u64
    }

    pub fn main_vertex_count(&self) -> u32 {
        self.part_sizes.iter().sum()
    }

    pub fn vertex_count(&self) -> u32 {
        self.main_vertex_count() + self.remainder_size
    }

    /// The common main part size, when all main parts are equal.
    pub fn uniform_part_size(&self) -> Option<u32> {
        let first = *self.part_sizes.first()?;
        self.part_sizes.iter().all(|&s| s == first).then_some(first)
    }

    /// `C(n,2)` minus the intra-part pairs of every part, the remainder part
    /// included: parts are independent sets.
    pub fn expected_edge_count(&self) -> usize {
        let choose2 = |x: u64| (x * x.saturating_sub(1) / 2) as usize;
        let n = self.vertex_count_u64();
        let intra: usize = self
            .part_sizes
            .iter()
            .map(|&s| choose2(s as u64))
            .sum::<usize>()
            + choose2(self.remainder_size as u64);
        choose2(n) - intra
    }
}

/// A vertex named by its coordinates: `Main { part: s, layer: j }` renders
/// as `u{s},{j}`, `Remainder { index: j }` as `w{j}`. All coordinates are
/// 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VertexId {
    Main { part: u32, layer: u32 },
    Remainder { index: u32 },
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Main { part, layer } => write!(f, "u{part},{layer}"),
            VertexId::Remainder { index } => write!(f, "w{index}"),
        }
    }
}

/// A complete multipartite graph: adjacency exactly between distinct parts,
/// the remainder part counting as its own part.
///
/// Dense ids lay out the main parts in order followed by the remainder
/// vertices, so the id range is contiguous and bijective with coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultipartiteGraph {
    spec: MultipartiteSpec,
    graph: Graph,
    /// Cumulative main part offsets; `part_offsets[s-1]..part_offsets[s]` is
    /// the dense id range of part `s`.
    part_offsets: Vec<u32>,
}

impl MultipartiteGraph {
    pub fn build(spec: MultipartiteSpec) -> Result<Self, GraphError> {
        spec.validate()?;
        let mut part_offsets = Vec::with_capacity(spec.part_sizes.len() + 1);
        let mut acc = 0u32;
        part_offsets.push(0);
        for &size in &spec.part_sizes {
            acc += size;
            part_offsets.push(acc);
        }
        let n = spec.vertex_count();
        let part_of = |dense: u32| -> usize {
            if dense >= acc {
                spec.part_sizes.len() // remainder part
            } else {
                part_offsets.partition_point(|&off| off <= dense) - 1
            }
        };
        let edges = vertex_pairs(n).filter(|&(u, v)| part_of(u) != part_of(v));
        let graph = Graph::from_edges(n, edges)?;
        Ok(MultipartiteGraph {
            spec,
            graph,
            part_offsets,
        })
    }

    pub fn spec(&self) -> &MultipartiteSpec {
        &self.spec
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> u32 {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// 1-based part index of a dense id; the remainder part (when present)
    /// comes last.
    pub fn part_of(&self, dense: u32) -> Result<u32, GraphError> {
        self.graph.check_vertex(dense)?;
        let main_total = self.spec.main_vertex_count();
        if dense >= main_total {
            Ok(self.spec.part_sizes.len() as u32 + 1)
        } else {
            Ok(self.part_offsets.partition_point(|&off| off <= dense) as u32)
        }
    }

    pub fn dense_id(&self, v: VertexId) -> Result<u32, GraphError> {
        match v {
            VertexId::Main { part, layer } => {
                if part == 0 || part as usize > self.spec.part_sizes.len() {
                    return Err(GraphError::InvalidCoordinate(v));
                }
                let size = self.spec.part_sizes[part as usize - 1];
                if layer == 0 || layer > size {
                    return Err(GraphError::InvalidCoordinate(v));
                }
                Ok(self.part_offsets[part as usize - 1] + layer - 1)
            }
            VertexId::Remainder { index } => {
                if index == 0 || index > self.spec.remainder_size {
                    return Err(GraphError::InvalidCoordinate(v));
                }
                Ok(self.spec.main_vertex_count() + index - 1)
            }
        }
    }

    pub fn vertex_id(&self, dense: u32) -> Result<VertexId, GraphError> {
        self.graph.check_vertex(dense)?;
        let main_total = self.spec.main_vertex_count();
        if dense >= main_total {
            Ok(VertexId::Remainder {
                index: dense - main_total + 1,
            })
        } else {
            let part = self.part_offsets.partition_point(|&off| off <= dense) as u32;
            Ok(VertexId::Main {
                part,
                layer: dense - self.part_offsets[part as usize - 1] + 1,
            })
        }
    }

    pub fn vertex_label(&self, dense: u32) -> Result<String, GraphError> {
        Ok(self.vertex_id(dense)?.to_string())
    }

    pub fn are_adjacent(&self, u: VertexId, v: VertexId) -> Result<bool, GraphError> {
        let du = self.dense_id(u)?;
        let dv = self.dense_id(v)?;
        self.graph.are_adjacent(du, dv)
    }

    /// Dense ids of the layer `U_j`: the `j`-th vertex of every main part
    /// that has one. Remainder vertices never belong to a layer.
    pub fn layer(&self, j: u32) -> Vec<u32> {
        assert!(j >= 1, "layers are 1-based");
        self.spec
            .part_sizes
            .iter()
            .enumerate()
            .filter(|&(_, &size)| j <= size)
            .map(|(s, _)| self.part_offsets[s] + j - 1)
            .collect()
    }
}

// ============================================================================
// Edge colorings
// ============================================================================

/// A total edge coloring: every edge of the host graph carries exactly one
/// color in `1..=color_count`. Querying a non-edge is an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    n: u32,
    color_count: u32,
    /// Triangular table in pair-lexicographic order; 0 marks a non-edge.
    colors: Vec<u32>,
}

impl EdgeColoring {
    /// Colors every edge of `g` by calling `f(u, v)` with `u < v`.
    pub fn from_fn(
        g: &Graph,
        color_count: u32,
        mut f: impl FnMut(u32, u32) -> u32,
    ) -> Result<Self, GraphError> {
        if color_count == 0 {
            return Err(GraphError::EmptyPalette);
        }
        let n = g.vertex_count();
        let mut colors = vec![0u32; pair_count(n)];
        for (u, v) in g.edges() {
            let c = f(u, v);
            if c == 0 || c > color_count {
                return Err(GraphError::ColorOutOfRange {
                    color: c,
                    color_count,
                });
            }
            colors[pair_index(n, u, v)] = c;
        }
        Ok(EdgeColoring {
            n,
            color_count,
            colors,
        })
    }

    /// Builds a coloring from `(u, v, color)` triples. The triples must
    /// cover every edge of `g` exactly once and nothing else.
    pub fn from_triples(
        g: &Graph,
        color_count: u32,
        triples: &[(u32, u32, u32)],
    ) -> Result<Self, GraphError> {
        if color_count == 0 {
            return Err(GraphError::EmptyPalette);
        }
        let n = g.vertex_count();
        let mut colors = vec![0u32; pair_count(n)];
        for &(u, v, c) in triples {
            if !g.are_adjacent(u, v)? {
                return Err(GraphError::NonEdge { u, v });
            }
            let (a, b) = (u.min(v), u.max(v));
            let slot = &mut colors[pair_index(n, a, b)];
            if *slot != 0 {
                return Err(GraphError::DuplicateEdge { u: a, v: b });
            }
            if c == 0 || c > color_count {
                return Err(GraphError::ColorOutOfRange {
                    color: c,
                    color_count,
                });
            }
            *slot = c;
        }
        // Totality: every edge of g must have received a color.
        for (u, v) in g.edges() {
            if colors[pair_index(n, u, v)] == 0 {
                return Err(GraphError::MissingColor { u, v });
            }
        }
        Ok(EdgeColoring {
            n,
            color_count,
            colors,
        })
    }

    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    pub fn color_count(&self) -> u32 {
        self.color_count
    }

    /// Color of the edge `{u, v}`; the key is normalized internally.
    pub fn color(&self, u: u32, v: u32) -> Result<u32, GraphError> {
        if u >= self.n {
            return Err(GraphError::InvalidVertex { id: u, n: self.n });
        }
        if v >= self.n {
            return Err(GraphError::InvalidVertex { id: v, n: self.n });
        }
        if u == v {
            return Err(GraphError::NonEdge { u, v });
        }
        let (a, b) = (u.min(v), u.max(v));
        match self.colors[pair_index(self.n, a, b)] {
            0 => Err(GraphError::NonEdge { u: a, v: b }),
            c => Ok(c),
        }
    }

    /// All colored edges as `(u, v, color)` triples in lexicographic order.
    pub fn colored_edges(&self) -> Vec<(u32, u32, u32)> {
        vertex_pairs(self.n)
            .filter_map(|(u, v)| {
                let c = self.colors[pair_index(self.n, u, v)];
                (c != 0).then_some((u, v, c))
            })
            .collect()
    }

    /// Distinct colors actually used, ascending.
    pub fn used_colors(&self) -> Vec<u32> {
        let mut seen = vec![false; self.color_count as usize + 1];
        for &c in &self.colors {
            seen[c as usize] = true;
        }
        (1..=self.color_count).filter(|&c| seen[c as usize]).collect()
    }
}

// ============================================================================
// Tests
// ============================================================================
