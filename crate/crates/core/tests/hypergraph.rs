use std::collections::BTreeSet;

use gperm::exact::rat_vec;
use gperm::hypergraph::{Hypergraph, HypergraphJson};
use gperm::permutahedron::vertices;
use gperm::verify::{check_hypergraph, random_hypergraph, rng};
use gperm::Polynomial;
use proptest::prelude::*;
use rand::Rng;

/// Chromatic polynomial by deletion-contraction, coefficients constant first.
fn deletion_contraction(n: usize, edges: &[(usize, usize)]) -> Vec<i64> {
    let Some((&(u, v), rest)) = edges.split_first() else {
        let mut c = vec![0; n + 1];
        c[n] = 1;
        return c;
    };
    if u == v {
        return vec![0; n + 1];
    }
    let deleted = deletion_contraction(n, rest);
    // merge v into u, relabel n-1 into v's slot
    let relabel = |x: usize| {
        let x = if x == v { u } else { x };
        if x == n - 1 {
            v
        } else {
            x
        }
    };
    let contracted_edges: Vec<(usize, usize)> = rest.iter().map(|&(a, b)| (relabel(a), relabel(b))).collect();
    let contracted = deletion_contraction(n - 1, &contracted_edges);
    let mut out = deleted;
    for (i, c) in contracted.into_iter().enumerate() {
        out[i] -= c;
    }
    out
}

fn graph_strategy() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (2usize..=5).prop_flat_map(|n| {
        let pair = (0..n, 0..n).prop_filter("no loops", |(a, b)| a != b);
        (Just(n), prop::collection::vec(pair, 0..=7))
    })
}

#[test]
fn deletion_contraction_oracle_sanity() {
    assert_eq!(deletion_contraction(3, &[(0, 1), (1, 2), (0, 2)]), vec![0, 2, -3, 1]);
    assert_eq!(deletion_contraction(2, &[(0, 1)]), vec![0, -1, 1]);
    assert_eq!(deletion_contraction(3, &[(0, 1), (1, 2)]), vec![0, 1, -2, 1]);
}

#[test]
fn running_example_on_three_nodes() {
    let j: HypergraphJson = serde_json::from_str(
        r#"{"nodes":["a","b","c"],"edges":[["a","b","c"],["a","b"],["b","c"],["a"],["b"],["c"]]}"#,
    )
    .unwrap();
    let h = Hypergraph::try_from(j).unwrap();
    let headings: BTreeSet<_> = h.vertices_via_headings().unwrap().iter().map(|v| rat_vec(v)).collect();
    let greedy: BTreeSet<_> = vertices(&h.setfn()).unwrap().into_iter().collect();
    assert_eq!(headings, greedy);
    assert_eq!(h.acyclic_headings().unwrap().len(), 5);
    let r = check_hypergraph(&h).unwrap();
    assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graphs_match_deletion_contraction((n, edges) in graph_strategy()) {
        let lists: Vec<Vec<usize>> = edges.iter().map(|&(a, b)| vec![a, b]).collect();
        let h = Hypergraph::new(n, &lists).unwrap();
        prop_assert_eq!(h.chromatic_polynomial().unwrap(), Polynomial::from_i64(&deletion_contraction(n, &edges)));
    }

    #[test]
    fn random_hypergraphs_satisfy_all_identities(seed in any::<u64>()) {
        let h = random_hypergraph(&mut rng(seed), 5, 5);
        let r = check_hypergraph(&h).unwrap();
        prop_assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn singleton_edges_do_not_change_acyclicity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let h = random_hypergraph(&mut r, 5, 4);
        let node = r.gen_range(0..h.d());
        let h2 = h.with_edge(&[node]).unwrap();
        prop_assert_eq!(h.acyclic_headings().unwrap().len(), h2.acyclic_headings().unwrap().len());
        let shifted: BTreeSet<Vec<i64>> = h
            .vertices_via_headings()
            .unwrap()
            .into_iter()
            .map(|mut v| {
                v[node] += 1;
                v
            })
            .collect();
        let after: BTreeSet<Vec<i64>> = h2.vertices_via_headings().unwrap().into_iter().collect();
        prop_assert_eq!(shifted, after);
    }
}
