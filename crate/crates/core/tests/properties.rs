//! Property suites over randomized graphs, colorings and specifications.

use proptest::prelude::*;

use rck::document::{decode, encode};
use rck::graph::{
    pair_count, vertex_pairs, EdgeColoring, Graph, MultipartiteGraph, MultipartiteSpec,
};
use rck::verifier::{count_disjoint_two_color, exact_pair_count, max_disjoint_rainbow_paths};

fn spec_strategy() -> impl Strategy<Value = MultipartiteSpec> {
    (
        prop::collection::vec(1u32..=4, 1..=12),
        0u32..=3,
    )
        .prop_map(|(part_sizes, remainder_size)| MultipartiteSpec {
            part_sizes,
            remainder_size,
        })
}

/// A random simple graph on `n` vertices as edge-presence bits, plus a
/// coloring of the present edges.
fn colored_graph_strategy(
    max_n: u32,
    color_count: u32,
) -> impl Strategy<Value = (Graph, EdgeColoring)> {
    (2u32..=max_n)
        .prop_flat_map(move |n| {
            let pairs = pair_count(n);
            (
                Just(n),
                prop::collection::vec(any::<bool>(), pairs),
                prop::collection::vec(1u32..=color_count, pairs),
            )
        })
        .prop_map(move |(n, present, colors)| {
            let edges: Vec<(u32, u32)> = vertex_pairs(n)
                .enumerate()
                .filter_map(|(i, pair)| present[i].then_some(pair))
                .collect();
            let g = Graph::from_edges(n, edges).unwrap();
            let mut slot_colors = Vec::new();
            for (i, pair) in vertex_pairs(n).enumerate() {
                if present[i] {
                    slot_colors.push((pair, colors[i]));
                }
            }
            let mut it = slot_colors.iter();
            let c = EdgeColoring::from_fn(&g, color_count, |_, _| it.next().unwrap().1).unwrap();
            (g, c)
        })
}

proptest! {
    /// Round-trip identity of the document format on randomized specs,
    /// colored and uncolored.
    #[test]
    fn document_round_trip(spec in spec_strategy(), seed in 0u64..1000) {
        let g = MultipartiteGraph::build(spec).unwrap();
        let text = encode(&g, None);
        let (g2, c2) = decode(&text).unwrap();
        prop_assert_eq!(&g, &g2);
        prop_assert!(c2.is_none());
        prop_assert_eq!(encode(&g2, None), text);

        // A deterministic pseudo-random coloring from the seed.
        let coloring = EdgeColoring::from_fn(g.graph(), 3, |u, v| {
            1 + ((u as u64 * 31 + v as u64 * 17 + seed) % 3) as u32
        }).unwrap();
        let text = encode(&g, Some(&coloring));
        let (g3, c3) = decode(&text).unwrap();
        prop_assert_eq!(g, g3);
        prop_assert_eq!(c3, Some(coloring));
    }

    /// Adjacency of a built multipartite graph is exactly "different part",
    /// with the remainder treated as its own part.
    #[test]
    fn adjacency_matches_parts(spec in spec_strategy()) {
        let g = MultipartiteGraph::build(spec).unwrap();
        for (u, v) in vertex_pairs(g.vertex_count()) {
            let expected = g.part_of(u).unwrap() != g.part_of(v).unwrap();
            prop_assert_eq!(g.graph().are_adjacent(u, v).unwrap(), expected);
        }
        prop_assert_eq!(g.edge_count(), g.spec().expected_edge_count());
    }

    /// Dense ids and coordinates are in bijection.
    #[test]
    fn dense_id_bijection(spec in spec_strategy()) {
        let g = MultipartiteGraph::build(spec).unwrap();
        for dense in 0..g.vertex_count() {
            let coords = g.vertex_id(dense).unwrap();
            prop_assert_eq!(g.dense_id(coords).unwrap(), dense);
        }
    }

    /// The 2-color closed form agrees with the packing solver on arbitrary
    /// small 2-colored graphs.
    #[test]
    fn two_color_fast_path_equals_solver((g, c) in colored_graph_strategy(8, 2)) {
        for (u, v) in vertex_pairs(g.vertex_count()) {
            let fast = count_disjoint_two_color(&g, &c, u, v).unwrap();
            let (packed, _) = max_disjoint_rainbow_paths(&g, &c, u, v).unwrap();
            prop_assert_eq!(fast, packed, "pair ({}, {})", u, v);
        }
    }

    /// Rainbow paths never exceed the color count, whatever cap is asked
    /// for.
    #[test]
    fn rainbow_paths_respect_the_color_cap((g, c) in colored_graph_strategy(7, 3)) {
        for (u, v) in vertex_pairs(g.vertex_count()) {
            let paths = rck::verifier::rainbow_paths_between(&g, &c, u, v, 50).unwrap();
            prop_assert!(paths.iter().all(|p| p.edge_count() <= 3));
        }
    }

    /// Adding a colored edge never decreases any pair's count. This is what
    /// justifies extending the spanning coloring to the full complete
    /// graph.
    #[test]
    fn adding_edges_never_decreases_counts(
        (g, c) in colored_graph_strategy(7, 3),
        extra_color in 1u32..=3,
        pick in any::<prop::sample::Index>(),
    ) {
        let n = g.vertex_count();
        let absent: Vec<(u32, u32)> = vertex_pairs(n)
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        prop_assume!(!absent.is_empty());
        let (au, av) = absent[pick.index(absent.len())];

        let before: Vec<u32> = vertex_pairs(n)
            .map(|(u, v)| exact_pair_count(&g, &c, u, v).unwrap())
            .collect();

        let mut edges = g.edges();
        edges.push((au, av));
        edges.sort_unstable();
        let g2 = Graph::from_edges(n, edges).unwrap();
        let c2 = EdgeColoring::from_fn(&g2, 3, |u, v| {
            if (u, v) == (au, av) {
                extra_color
            } else {
                c.color(u, v).unwrap()
            }
        })
        .unwrap();

        for (i, (u, v)) in vertex_pairs(n).enumerate() {
            let after = exact_pair_count(&g2, &c2, u, v).unwrap();
            prop_assert!(
                after >= before[i],
                "pair ({}, {}) dropped from {} to {}",
                u, v, before[i], after
            );
        }
    }
}
