//! Ground-truth engine for tiny instances: exact rainbow k-connectivity by
//! exhaustive search over colorings, and a deliberately naive per-pair
//! counter used to cross-check the verifier.
//!
//! Colorings are enumerated as base-j counters over the sorted edge list,
//! so the first satisfying assignment is the lexicographically smallest
//! witness. Relabeling colors preserves rainbowness, so fixing the first
//! edge's color to 1 loses no solutions and keeps the same minimal witness;
//! that pruning is on by default and recorded in the result.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{vertex_pairs, EdgeColoring, Graph, GraphError};
use crate::verifier::{self, VerifyError};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("k must be at least 1")]
    KTooSmall,
    #[error("max_colors must be at least 1")]
    NoColors,
    #[error("the graph is disconnected")]
    Disconnected,
    #[error("enumeration needs {needed} colorings, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("search budget of {budget} exhausted")]
    SearchBudgetExhausted { budget: u64 },
    #[error("no coloring with at most {max_colors} colors works")]
    NoColoringWithin { max_colors: u32 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    pub max_colors: u32,
    pub budget: u64,
    pub symmetry_pruning: bool,
}

impl OracleOptions {
    pub fn new(max_colors: u32) -> Self {
        OracleOptions {
            max_colors,
            budget: DEFAULT_BUDGET,
            symmetry_pruning: true,
        }
    }
}

/// Result of an exhaustive search: the minimal color count, the smallest
/// witness coloring under the enumeration order, and the exhaustion record
/// that certifies minimality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub k: u32,
    /// Minimal number of colors for which some coloring verifies at `k`.
    pub colors: u32,
    pub witness: EdgeColoring,
    pub colorings_examined: u64,
    /// Colorings examined per palette size `1..=colors`; every entry but
    /// the last is a completed exhaustion.
    pub examined_per_palette: Vec<u64>,
    pub symmetry_pruned: bool,
}

/// JSON form of an oracle result; the witness appears as sorted
/// `(u, v, color)` triples.
#[derive(Debug, Clone, Serialize)]
pub struct OracleDocument {
    pub k: u32,
    pub colors: u32,
    pub witness_color_count: u32,
    pub witness_edges: Vec<(u32, u32, u32)>,
    pub colorings_examined: u64,
    pub examined_per_palette: Vec<u64>,
    pub symmetry_pruned: bool,
}

impl OracleResult {
    pub fn to_document(&self) -> OracleDocument {
        OracleDocument {
            k: self.k,
            colors: self.colors,
            witness_color_count: self.witness.color_count(),
            witness_edges: self.witness.colored_edges(),
            colorings_examined: self.colorings_examined,
            examined_per_palette: self.examined_per_palette.clone(),
            symmetry_pruned: self.symmetry_pruned,
        }
    }
}

/// Exact rainbow k-connectivity of a small connected graph: the minimal `j`
/// such that some `j`-edge-coloring gives every vertex pair at least `k`
/// internally disjoint rainbow paths.
pub fn exact_rck(g: &Graph, k: u32, opts: &OracleOptions) -> Result<OracleResult, OracleError> {
    if k == 0 {
        return Err(OracleError::KTooSmall);
    }
    if opts.max_colors == 0 {
        return Err(OracleError::NoColors);
    }
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    let edges = g.edges();
    let m = edges.len();

    // Up-front budget guard on the full enumeration size.
    let mut needed: u128 = 0;
    for j in 1..=opts.max_colors {
        let free_slots = if opts.symmetry_pruning && m > 0 { m - 1 } else { m };
        needed = needed.saturating_add((j as u128).saturating_pow(free_slots as u32));
    }
    if needed > opts.budget as u128 {
        return Err(OracleError::BudgetExceeded {
            needed,
            budget: opts.budget,
        });
    }

    let pairs: Vec<(u32, u32)> = vertex_pairs(g.vertex_count()).collect();
    let mut total_examined = 0u64;
    let mut examined_per_palette = Vec::new();

    for j in 1..=opts.max_colors {
        let mut examined_j = 0u64;
        // Base-j counter over edge slots, colors 1..=j, ascending from the
        // all-ones assignment; the rightmost slot is least significant. With
        // pruning, slot 0 stays at color 1.
        let first_free = usize::from(opts.symmetry_pruning && m > 0);
        let mut assignment = vec![1u32; m];
        loop {
            examined_j += 1;
            total_examined += 1;
            let mut slots = assignment.iter();
            let coloring = EdgeColoring::from_fn(g, j, |_, _| {
                *slots.next().expect("one slot per edge")
            })?;
            if satisfies(g, &coloring, &pairs, k)? {
                examined_per_palette.push(examined_j);
                return Ok(OracleResult {
                    k,
                    colors: j,
                    witness: coloring,
                    colorings_examined: total_examined,
                    examined_per_palette,
                    symmetry_pruned: opts.symmetry_pruning,
                });
            }
            let mut slot = m;
            let mut advanced = false;
            while slot > first_free {
                slot -= 1;
                if assignment[slot] < j {
                    assignment[slot] += 1;
                    assignment[slot + 1..].fill(1);
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break; // palette exhausted
            }
        }
        examined_per_palette.push(examined_j);
    }
    Err(OracleError::NoColoringWithin {
        max_colors: opts.max_colors,
    })
}

fn satisfies(
    g: &Graph,
    c: &EdgeColoring,
    pairs: &[(u32, u32)],
    k: u32,
) -> Result<bool, OracleError> {
    for &(u, v) in pairs {
        if verifier::exact_pair_count(g, c, u, v)? < k {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Naive exact per-pair maxima for cross-checking the verifier: enumerate
/// all simple paths up to the color-count length, filter the rainbow ones
/// by scanning their colors, and search all disjoint subsets directly with
/// no pruning. Independent of the verifier's enumeration and packing code.
pub fn exhaustive_pair_table(
    g: &Graph,
    c: &EdgeColoring,
    budget: u64,
) -> Result<Vec<u32>, OracleError> {
    if c.vertex_count() != g.vertex_count() {
        return Err(VerifyError::ColoringMismatch {
            coloring: c.vertex_count(),
            graph: g.vertex_count(),
        }
        .into());
    }
    let mut nodes_left = budget;
    let mut table = Vec::with_capacity(crate::graph::pair_count(g.vertex_count()));
    for (u, v) in vertex_pairs(g.vertex_count()) {
        let paths = naive_rainbow_paths(g, c, u, v)?;
        let mut best = 0u32;
        let mut chosen: Vec<usize> = Vec::new();
        naive_pack(&paths, 0, &mut chosen, &mut best, &mut nodes_left, budget)?;
        table.push(best);
    }
    Ok(table)
}

/// All simple `u`-`v` paths with at most `color_count` edges whose edge
/// colors are pairwise distinct. Collects every simple path first, then
/// filters by a quadratic scan.
fn naive_rainbow_paths(
    g: &Graph,
    c: &EdgeColoring,
    u: u32,
    v: u32,
) -> Result<Vec<Vec<u32>>, OracleError> {
    let mut all = Vec::new();
    let mut prefix = vec![u];
    collect_simple_paths(g, v, c.color_count() as usize, &mut prefix, &mut all);
    let mut rainbow = Vec::new();
    for path in all {
        let mut colors = Vec::new();
        for step in path.windows(2) {
            colors.push(c.color(step[0], step[1])?);
        }
        let distinct = colors
            .iter()
            .enumerate()
            .all(|(i, a)| colors[..i].iter().all(|b| b != a));
        if distinct {
            rainbow.push(path);
        }
    }
    Ok(rainbow)
}

fn collect_simple_paths(
    g: &Graph,
    target: u32,
    max_edges: usize,
    prefix: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    let last = *prefix.last().expect("prefix is never empty");
    for y in g.neighbors(last) {
        if y == target {
            let mut path = prefix.clone();
            path.push(y);
            out.push(path);
        } else if !prefix.contains(&y) && prefix.len() < max_edges {
            prefix.push(y);
            collect_simple_paths(g, target, max_edges, prefix, out);
            prefix.pop();
        }
    }
}

/// Explores every pairwise internally disjoint subset of `paths`, checking
/// disjointness by direct interior scans.
fn naive_pack(
    paths: &[Vec<u32>],
    from: usize,
    chosen: &mut Vec<usize>,
    best: &mut u32,
    nodes_left: &mut u64,
    budget: u64,
) -> Result<(), OracleError> {
    if *nodes_left == 0 {
        return Err(OracleError::SearchBudgetExhausted { budget });
    }
    *nodes_left -= 1;
    *best = (*best).max(chosen.len() as u32);
    for idx in from..paths.len() {
        let candidate = &paths[idx];
        let clash = chosen.iter().any(|&other| {
            interior(candidate)
                .iter()
                .any(|x| interior(&paths[other]).contains(x))
        });
        if !clash {
            chosen.push(idx);
            naive_pack(paths, idx + 1, chosen, best, nodes_left, budget)?;
            chosen.pop();
        }
    }
    Ok(())
}

fn interior(path: &[u32]) -> &[u32] {
    if path.len() <= 2 {
        &[]
    } else {
        &path[1..path.len() - 1]
    }
}

// ============================================================================
// Tests
// ============================================================================
