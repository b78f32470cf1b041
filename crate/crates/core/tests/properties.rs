//! Randomised invariants over small connected multigraphs.

use proptest::prelude::*;
use snkit::io::{
    decomposition_from_json, decomposition_to_json, graph_from_json, graph_from_text, graph_to_json,
    scramble_from_json, scramble_to_json,
};
use snkit::multigraph::{are_isomorphic, canonical_form};
use snkit::scramble::Scramble;
use snkit::screewidth::screewidth_exact;
use snkit::sn_solver::{dsn_exact, scramble_number, sn_exact, SnOptions};
use snkit::topo_minor::{is_topological_minor, smooth};
use snkit::{Multigraph, VertexSet};

/// A random spanning tree with extra parallel and non-tree edges on top.
fn connected(max_n: usize, max_mult: u32) -> impl Strategy<Value = Multigraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let pairs = n * (n - 1) / 2;
        (
            prop::collection::vec(any::<usize>(), n.saturating_sub(1)),
            prop::collection::vec(0..=max_mult, pairs),
        )
            .prop_map(move |(parents, extra)| {
                let mut g = Multigraph::empty(n).unwrap();
                for v in 1..n {
                    g.add_edges(parents[v - 1] % v, v, 1).unwrap();
                }
                let mut i = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        let room = max_mult - g.multiplicity(u, v);
                        g.add_edges(u, v, extra[i].min(room)).unwrap();
                        i += 1;
                    }
                }
                g
            })
    })
}

fn with_permutation(max_n: usize, max_mult: u32) -> impl Strategy<Value = (Multigraph, Vec<usize>)> {
    connected(max_n, max_mult).prop_flat_map(|g| {
        let perm = Just((0..g.n()).collect::<Vec<_>>()).prop_shuffle();
        (Just(g), perm)
    })
}

fn as_text(g: &Multigraph) -> String {
    let mut s = format!("# random\nn {}\n", g.n());
    for (u, v, m) in g.edges().into_iter().rev() {
        s.push_str(&format!("{v} {u} {m}\n"));
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn graph_json_round_trips_byte_for_byte(g in connected(7, 4)) {
        let text = graph_to_json(&g);
        let back = graph_from_json(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(graph_to_json(&back), text);
        prop_assert_eq!(graph_from_text(&as_text(&g)).unwrap(), g);
    }

    #[test]
    fn scramble_and_decomposition_round_trip(g in connected(6, 3), pick in any::<u64>()) {
        let subsets = g.connected_subsets();
        let eggs: Vec<VertexSet> = subsets.iter().enumerate().filter(|(i, _)| pick >> (i % 64) & 1 == 1).map(|(_, &s)| s).collect();
        prop_assume!(!eggs.is_empty());
        let s = Scramble::new(g.clone(), eggs).unwrap();
        let back = scramble_from_json(&scramble_to_json(&s), |_| unreachable!()).unwrap();
        prop_assert_eq!(&back, &s);
        let (_, d) = screewidth_exact(&g).unwrap();
        let text = decomposition_to_json(&d);
        prop_assert_eq!(decomposition_to_json(&decomposition_from_json(&text).unwrap()), text);
    }

    #[test]
    fn invariants_survive_relabelling((g, perm) in with_permutation(7, 3)) {
        let h = g.relabel(&perm);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert!(are_isomorphic(&g, &h));
        prop_assert_eq!(g.edge_connectivity(), h.edge_connectivity());
        prop_assert_eq!(g.lambda2(), h.lambda2());
        prop_assert_eq!(g.independence_number(), h.independence_number());
        prop_assert_eq!(g.connected_subsets().len(), h.connected_subsets().len());
        prop_assert_eq!(screewidth_exact(&g).unwrap().0, screewidth_exact(&h).unwrap().0);
    }

    #[test]
    fn scramble_number_is_a_graph_invariant((g, perm) in with_permutation(6, 3)) {
        let h = g.relabel(&perm);
        let a = sn_exact(&g).unwrap();
        a.verify(&g).unwrap();
        prop_assert_eq!(a.value, sn_exact(&h).unwrap().value);
        prop_assert_eq!(dsn_exact(&g).unwrap().value, dsn_exact(&h).unwrap().value);
    }

    #[test]
    fn disjoint_below_scramble_below_screewidth(g in connected(6, 3)) {
        let sn = sn_exact(&g).unwrap().value;
        let dsn = dsn_exact(&g).unwrap().value;
        let (scw, d) = screewidth_exact(&g).unwrap();
        prop_assert!(dsn <= sn && sn <= scw);
        prop_assert_eq!(d.width(&g).unwrap(), scw);
        prop_assert!(d.node_count() < 2 * g.n().max(1));
    }

    #[test]
    fn subdividing_an_edge_keeps_the_scramble_number(g in connected(5, 3), pick in any::<usize>()) {
        let edges = g.edges();
        prop_assume!(!edges.is_empty());
        let (u, v, _) = edges[pick % edges.len()];
        let n = g.n();
        let mut h = Multigraph::empty(n + 1).unwrap();
        for (a, b, m) in g.edges() {
            h.add_edges(a, b, m).unwrap();
        }
        let mut h = h.remove_edge(u, v).unwrap();
        h.add_edges(u, n, 1).unwrap();
        h.add_edges(n, v, 1).unwrap();
        prop_assert_eq!(smooth(&h, n).unwrap(), g.clone());
        let opts = SnOptions::default();
        prop_assert_eq!(scramble_number(&h, &opts).unwrap(), scramble_number(&g, &opts).unwrap());
        let model = is_topological_minor(&g, &h).expect("a graph is a topological minor of its subdivision");
        model.verify(&g, &h).unwrap();
    }
}
