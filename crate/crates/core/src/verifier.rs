//! Exact computation of internally disjoint rainbow path counts, the
//! verification report, and the independent certificate checker.
//!
//! With two colors every rainbow path has at most two edges, so the maximum
//! disjoint family is the direct edge plus all midpoints whose two edges
//! differ in color; that closed form is the fast path. For arbitrary color
//! counts the solver enumerates all rainbow paths (pigeonhole caps their
//! length at the color count) and packs them exactly by branch and bound.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{ConstructionError, ConstructionParams, PairCase};
use crate::graph::{pair_index, vertex_pairs, EdgeColoring, Graph, GraphError};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("endpoints must be distinct")]
    SameEndpoints,
    #[error("k must be at least 1")]
    KTooSmall,
    #[error("operation requires exactly 2 colors, got {0}")]
    NotTwoColors(u32),
    #[error("coloring covers {coloring} vertices, graph has {graph}")]
    ColoringMismatch { coloring: u32, graph: u32 },
    #[error("construction context describes {expected} vertices, graph has {got}")]
    ContextMismatch { expected: u32, got: u32 },
    #[error("invalid report JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

// ============================================================================
// Paths and certificates
// ============================================================================

/// A vertex sequence claimed to be a rainbow path. Solver output always
/// satisfies the path invariants; foreign instances are validated by
/// [`check_certificate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RainbowPath {
    vertices: Vec<u32>,
}

impl RainbowPath {
    pub fn from_vertices(vertices: Vec<u32>) -> Self {
        RainbowPath { vertices }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    /// Vertices strictly between the endpoints.
    pub fn interior(&self) -> &[u32] {
        if self.vertices.len() <= 2 {
            &[]
        } else {
            &self.vertices[1..self.vertices.len() - 1]
        }
    }
}

/// A machine-checkable witness: internally disjoint rainbow paths between a
/// fixed pair of endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointPathCertificate {
    pub u: u32,
    pub v: u32,
    pub paths: Vec<RainbowPath>,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CertificateViolation {
    #[error("certificate endpoints must be distinct")]
    SameEndpoints,
    #[error("path {index} uses invalid vertex {id}")]
    InvalidVertex { index: usize, id: u32 },
    #[error("path {index} has fewer than 2 vertices")]
    PathTooShort { index: usize },
    #[error("path {index} does not run between the certificate endpoints")]
    WrongEndpoints { index: usize },
    #[error("path {index} repeats vertex {vertex}")]
    RepeatedVertex { index: usize, vertex: u32 },
    #[error("path {index} step {position} is not a colored edge")]
    NotAnEdge { index: usize, position: usize },
    #[error("path {index} repeats color {color}")]
    RepeatedColor { index: usize, color: u32 },
    #[error("path {index} has more edges than there are colors")]
    TooLong { index: usize },
    #[error("vertex {vertex} appears in the interiors of paths {a} and {b}")]
    SharedInteriorVertex { vertex: u32, a: usize, b: usize },
}

/// Validates a certificate against a colored graph without reusing any of
/// the solver's enumeration machinery.
pub fn check_certificate_detailed(
    g: &Graph,
    c: &EdgeColoring,
    cert: &DisjointPathCertificate,
) -> Result<(), CertificateViolation> {
    if cert.u == cert.v {
        return Err(CertificateViolation::SameEndpoints);
    }
    let n = g.vertex_count();
    // interior owner per vertex, for pairwise disjointness
    let mut owner: Vec<Option<usize>> = vec![None; n as usize];
    for (index, path) in cert.paths.iter().enumerate() {
        let vs = path.vertices();
        if vs.len() < 2 {
            return Err(CertificateViolation::PathTooShort { index });
        }
        for &x in vs {
            if x >= n {
                return Err(CertificateViolation::InvalidVertex { index, id: x });
            }
        }
        if vs[0] != cert.u || vs[vs.len() - 1] != cert.v {
            return Err(CertificateViolation::WrongEndpoints { index });
        }
        let mut seen = vec![false; n as usize];
        for &x in vs {
            if seen[x as usize] {
                return Err(CertificateViolation::RepeatedVertex { index, vertex: x });
            }
            seen[x as usize] = true;
        }
        if path.edge_count() > c.color_count() as usize {
            return Err(CertificateViolation::TooLong { index });
        }
        let mut color_seen = vec![false; c.color_count() as usize + 1];
        for (position, step) in vs.windows(2).enumerate() {
            match g.are_adjacent(step[0], step[1]) {
                Ok(true) => {}
                _ => return Err(CertificateViolation::NotAnEdge { index, position }),
            }
            let color = c
                .color(step[0], step[1])
                .map_err(|_| CertificateViolation::NotAnEdge { index, position })?;
            if color_seen[color as usize] {
                return Err(CertificateViolation::RepeatedColor { index, color });
            }
            color_seen[color as usize] = true;
        }
        for &x in path.interior() {
            if let Some(other) = owner[x as usize] {
                return Err(CertificateViolation::SharedInteriorVertex {
                    vertex: x,
                    a: other,
                    b: index,
                });
            }
            owner[x as usize] = Some(index);
        }
    }
    Ok(())
}

/// Boolean form of [`check_certificate_detailed`].
pub fn check_certificate(g: &Graph, c: &EdgeColoring, cert: &DisjointPathCertificate) -> bool {
    check_certificate_detailed(g, c, cert).is_ok()
}

// ============================================================================
// Path enumeration
// ============================================================================

fn check_pair(g: &Graph, c: &EdgeColoring, u: u32, v: u32) -> Result<(), VerifyError> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(VerifyError::SameEndpoints);
    }
    if c.vertex_count() != g.vertex_count() {
        return Err(VerifyError::ColoringMismatch {
            coloring: c.vertex_count(),
            graph: g.vertex_count(),
        });
    }
    Ok(())
}

/// Enumerates every rainbow `u`-`v` path with at most
/// `min(max_len, color_count)` edges, in lexicographic order of the vertex
/// sequence.
pub fn rainbow_paths_between(
    g: &Graph,
    c: &EdgeColoring,
    u: u32,
    v: u32,
    max_len: usize,
) -> Result<Vec<RainbowPath>, VerifyError> {
    check_pair(g, c, u, v)?;
    let cap = max_len.min(c.color_count() as usize);
    let mut out = Vec::new();
    if cap == 0 {
        return Ok(out);
    }
    let mut on_path = vec![false; g.vertex_count() as usize];
    on_path[u as usize] = true;
    let mut state = PathDfs {
        g,
        c,
        target: v,
        cap,
        current: vec![u],
        on_path,
        color_used: vec![false; c.color_count() as usize + 1],
    };
    state.extend(&mut out)?;
    debug_assert!(out
        .iter()
        .all(|p| p.edge_count() <= c.color_count() as usize));
    Ok(out)
}

struct PathDfs<'a> {
    g: &'a Graph,
    c: &'a EdgeColoring,
    target: u32,
    cap: usize,
    current: Vec<u32>,
    on_path: Vec<bool>,
    color_used: Vec<bool>,
}

impl PathDfs<'_> {
    fn extend(&mut self, out: &mut Vec<RainbowPath>) -> Result<(), VerifyError> {
        let x = *self.current.last().expect("path is never empty");
        for y in self.g.neighbors(x) {
            let color = self.c.color(x, y)? as usize;
            if self.color_used[color] {
                continue;
            }
            if y == self.target {
                let mut vertices = self.current.clone();
                vertices.push(y);
                out.push(RainbowPath::from_vertices(vertices));
            } else if !self.on_path[y as usize] && self.current.len() < self.cap {
                self.current.push(y);
                self.on_path[y as usize] = true;
                self.color_used[color] = true;
                self.extend(out)?;
                self.color_used[color] = false;
                self.on_path[y as usize] = false;
                self.current.pop();
            }
        }
        Ok(())
    }
}

// ============================================================================
// Exact disjoint-path counts
// ============================================================================

/// Exact maximum family size for a 2-colored graph: the direct edge plus
/// every midpoint whose two edges carry different colors. Distinct
/// midpoints are automatically internally disjoint.
pub fn count_disjoint_two_color(
    g: &Graph,
    c: &EdgeColoring,
    u: u32,
    v: u32,
) -> Result<u32, VerifyError> {
    if c.color_count() != 2 {
        return Err(VerifyError::NotTwoColors(c.color_count()));
    }
    check_pair(g, c, u, v)?;
    Ok(two_color_pair(g, c, u, v, false)?.0)
}

fn two_color_pair(
    g: &Graph,
    c: &EdgeColoring,
    u: u32,
    v: u32,
    want_cert: bool,
) -> Result<(u32, Option<DisjointPathCertificate>), VerifyError> {
    let mut count = 0u32;
    let mut paths = Vec::new();
    if g.has_edge(u, v) {
        count += 1;
        if want_cert {
            paths.push(RainbowPath::from_vertices(vec![u, v]));
        }
    }
    for y in 0..g.vertex_count() {
        if y == u || y == v || !g.has_edge(u, y) || !g.has_edge(y, v) {
            continue;
        }
        if c.color(u, y)? != c.color(y, v)? {
            count += 1;
            if want_cert {
                paths.push(RainbowPath::from_vertices(vec![u, y, v]));
            }
        }
    }
    let cert = want_cert.then_some(DisjointPathCertificate { u, v, paths });
    Ok((count, cert))
}

/// Exact maximum number of pairwise internally disjoint rainbow `u`-`v`
/// paths, with a certificate attaining it. Branch and bound over the
/// enumerated rainbow paths in shortest-first order, seeded with a greedy
/// packing and pruned by the remaining-path count and the trivial
/// `min(deg u, deg v) + [uv is an edge]` bound.
pub fn max_disjoint_rainbow_paths(
    g: &Graph,
    c: &EdgeColoring,
    u: u32,
    v: u32,
) -> Result<(u32, DisjointPathCertificate), VerifyError> {
    check_pair(g, c, u, v)?;
    let mut paths = rainbow_paths_between(g, c, u, v, c.color_count() as usize)?;
    // Enumeration order is lexicographic; a stable sort by length gives the
    // shortest-first-then-lexicographic branching order.
    paths.sort_by_key(|p| p.edge_count());

    let n = g.vertex_count() as usize;
    let words = n.div_ceil(64);
    let interiors: Vec<Vec<u64>> = paths
        .iter()
        .map(|p| {
            let mut mask = vec![0u64; words];
            for &x in p.interior() {
                mask[x as usize / 64] |= 1u64 << (x % 64);
            }
            mask
        })
        .collect();

    let trivial_ub =
        (g.degree(u).min(g.degree(v)) + usize::from(g.has_edge(u, v))).min(paths.len()) as u32;

    let mut search = PackingSearch {
        interiors: &interiors,
        used: vec![0u64; words],
        current: Vec::new(),
        best: 0,
        best_set: Vec::new(),
        ub: trivial_ub,
    };
    // Greedy seed: take paths in order whenever they stay disjoint.
    for (idx, interior) in interiors.iter().enumerate() {
        if disjoint(&search.used, interior) {
            merge(&mut search.used, interior);
            search.current.push(idx);
        }
    }
    search.best = search.current.len() as u32;
    search.best_set = search.current.clone();
    search.current.clear();
    search.used.fill(0);

    search.run(0);

    let chosen = search
        .best_set
        .iter()
        .map(|&i| paths[i].clone())
        .collect::<Vec<_>>();
    let count = search.best;
    debug_assert_eq!(count as usize, chosen.len());
    Ok((count, DisjointPathCertificate { u, v, paths: chosen }))
}

fn disjoint(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & y == 0)
}

fn merge(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x |= y;
    }
}

fn unmerge(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x &= !y;
    }
}

struct PackingSearch<'a> {
    interiors: &'a [Vec<u64>],
    used: Vec<u64>,
    current: Vec<usize>,
    best: u32,
    best_set: Vec<usize>,
    ub: u32,
}

impl PackingSearch<'_> {
    fn run(&mut self, idx: usize) {
        if self.current.len() as u32 > self.best {
            self.best = self.current.len() as u32;
            self.best_set = self.current.clone();
        }
        if self.best >= self.ub || idx == self.interiors.len() {
            return;
        }
        if self.current.len() + (self.interiors.len() - idx) <= self.best as usize {
            return;
        }
        if disjoint(&self.used, &self.interiors[idx]) {
            merge(&mut self.used, &self.interiors[idx]);
            self.current.push(idx);
            self.run(idx + 1);
            self.current.pop();
            unmerge(&mut self.used, &self.interiors[idx]);
        }
        self.run(idx + 1);
    }
}

/// Exact per-pair count; routes through the 2-color closed form when it
/// applies and the packing solver otherwise.
pub fn exact_pair_count(g: &Graph, c: &EdgeColoring, u: u32, v: u32) -> Result<u32, VerifyError> {
    if c.color_count() == 2 {
        count_disjoint_two_color(g, c, u, v)
    } else {
        max_disjoint_rainbow_paths(g, c, u, v).map(|(count, _)| count)
    }
}

// ============================================================================
// Whole-graph verification
// ============================================================================

/// Per-pair exact counts, their minimum, and the verdict `min >= k`.
///
/// `per_pair` is a triangular table over unordered pairs in lexicographic
/// order (see [`pair_index`]); `per_case` and `certificates` are filled on
/// request. Reports are deterministic regardless of thread count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub verdict: bool,
    pub k: u32,
    pub vertices: u32,
    pub color_count: u32,
    /// Minimum pair count; `None` only for graphs with fewer than 2
    /// vertices, where the verdict is vacuously true.
    pub global_min: Option<u32>,
    pub per_pair: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub per_case: Option<BTreeMap<PairCase, u32>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificates: Option<Vec<DisjointPathCertificate>>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub metadata: BTreeMap<String, String>,
}

impl VerificationReport {
    pub fn pair_count_for(&self, u: u32, v: u32) -> Option<u32> {
        if u == v || u >= self.vertices || v >= self.vertices {
            return None;
        }
        let (a, b) = (u.min(v), u.max(v));
        self.per_pair.get(pair_index(self.vertices, a, b)).copied()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, VerifyError> {
        serde_json::from_str(text).map_err(|e| VerifyError::Json(e.to_string()))
    }
}

/// Computes the exact count for every vertex pair and decides whether the
/// coloring provides `k` internally disjoint rainbow paths everywhere.
/// Pairs are evaluated in parallel and aggregated in lexicographic order.
pub fn verify_rck(
    g: &Graph,
    c: &EdgeColoring,
    k: u32,
    want_certificates: bool,
    params: Option<&ConstructionParams>,
) -> Result<VerificationReport, VerifyError> {
    if k == 0 {
        return Err(VerifyError::KTooSmall);
    }
    if c.vertex_count() != g.vertex_count() {
        return Err(VerifyError::ColoringMismatch {
            coloring: c.vertex_count(),
            graph: g.vertex_count(),
        });
    }
    if let Some(p) = params {
        if p.vertex_count() != g.vertex_count() {
            return Err(VerifyError::ContextMismatch {
                expected: p.vertex_count(),
                got: g.vertex_count(),
            });
        }
    }
    let n = g.vertex_count();
    let pairs: Vec<(u32, u32)> = vertex_pairs(n).collect();
    let two_colors = c.color_count() == 2;
    let results: Vec<(u32, Option<DisjointPathCertificate>)> = pairs
        .par_iter()
        .map(|&(u, v)| {
            if two_colors {
                two_color_pair(g, c, u, v, want_certificates)
            } else {
                max_disjoint_rainbow_paths(g, c, u, v)
                    .map(|(count, cert)| (count, want_certificates.then_some(cert)))
            }
        })
        .collect::<Result<_, _>>()?;

    let per_pair: Vec<u32> = results.iter().map(|&(count, _)| count).collect();
    let global_min = per_pair.iter().min().copied();
    let verdict = per_pair.iter().all(|&count| count >= k);

    let per_case = match params {
        Some(p) => {
            let mut minima: BTreeMap<PairCase, u32> = BTreeMap::new();
            for (&(u, v), &count) in pairs.iter().zip(&per_pair) {
                let case = p.classify(p.vertex_of_dense(u)?, p.vertex_of_dense(v)?)?;
                minima
                    .entry(case)
                    .and_modify(|m| *m = (*m).min(count))
                    .or_insert(count);
            }
            Some(minima)
        }
        None => None,
    };

    let certificates = want_certificates.then(|| {
        results
            .into_iter()
            .map(|(_, cert)| cert.expect("certificates were requested"))
            .collect()
    });

    Ok(VerificationReport {
        verdict,
        k,
        vertices: n,
        color_count: c.color_count(),
        global_min,
        per_pair,
        per_case,
        certificates,
        metadata: BTreeMap::new(),
    })
}

// ============================================================================
// Tests
// ============================================================================
