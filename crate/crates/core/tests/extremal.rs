use std::collections::BTreeSet;

use spanlf_core::{
    canonical_code, clique_plus_isolated, enumerate_candidates, ex_exact, hamiltonian_completion,
    lower_bound, max_linear_forest, min_isolated_max_forest, upper_bound, verify_spec, Budget,
    Graph, SearchSpec, Strategy, Verdict,
};

fn spec(n: usize, k: usize) -> SearchSpec {
    SearchSpec::new(n, k)
        .unwrap()
        .with_budget(Budget::unlimited())
        .with_workers(4)
}

/// Largest linear forest by trying every vertex order; each path of a linear
/// forest can be laid out contiguously.
fn forest_by_orders(g: &Graph) -> usize {
    fn rec(g: &Graph, order: &mut Vec<usize>, used: u64, edges: usize, best: &mut usize) {
        let n = g.n();
        if order.len() == n {
            *best = (*best).max(edges);
            return;
        }
        // remaining vertices can add at most one edge each
        if edges + (n - order.len()) <= *best {
            return;
        }
        for w in 0..n {
            if used >> w & 1 == 0 {
                let gain = order.last().is_some_and(|&l| g.has_edge(l, w)) as usize;
                order.push(w);
                rec(g, order, used | 1 << w, edges + gain, best);
                order.pop();
            }
        }
    }
    let mut best = 0;
    rec(g, &mut Vec::new(), 0, 0, &mut best);
    best
}

#[test]
fn labelled_brute_force_agrees_up_to_six_vertices() {
    for n in 3..=6 {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        // for each labelled graph, the largest forest and the graph itself
        let mut graphs = Vec::new();
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<_> = (0..pairs.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| pairs[i])
                .collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            graphs.push((forest_by_orders(&g), g));
        }
        for k in 1..=n {
            let best = graphs
                .iter()
                .filter(|(f, _)| *f <= n - k)
                .map(|(_, g)| g.edge_count())
                .max()
                .unwrap();
            let classes: BTreeSet<_> = graphs
                .iter()
                .filter(|(f, g)| *f <= n - k && g.edge_count() == best)
                .map(|(_, g)| canonical_code(g).unwrap())
                .collect();
            for strategy in [Strategy::Closure, Strategy::Exhaustive] {
                let r = ex_exact(&spec(n, k).with_strategy(strategy)).unwrap();
                assert_eq!(r.exact_value, Some(best), "n={n} k={k} {strategy:?}");
                assert_eq!(
                    r.witnesses.iter().cloned().collect::<BTreeSet<_>>(),
                    classes,
                    "n={n} k={k} {strategy:?}"
                );
            }
        }
    }
}

#[test]
fn class_counts_through_seven_vertices() {
    let expected = [1u64, 2, 4, 11, 34, 156, 1044];
    for (i, &count) in expected.iter().enumerate() {
        let n = i + 1;
        let c =
            enumerate_candidates(&spec(n, 1).with_max_complement_edges(n * (n - 1) / 2)).unwrap();
        assert!(c.complete);
        assert_eq!(c.graphs.len() as u64, count, "n={n}");
        let codes: BTreeSet<_> = c
            .graphs
            .iter()
            .map(|g| canonical_code(g).unwrap())
            .collect();
        assert_eq!(codes.len(), c.graphs.len());
    }
}

#[test]
fn strategies_agree_on_eight_vertices() {
    for k in 2..=8 {
        let a = ex_exact(&spec(8, k)).unwrap();
        let b = ex_exact(&spec(8, k).with_strategy(Strategy::Exhaustive)).unwrap();
        assert!(a.complete && b.complete);
        assert_eq!(a.exact_value, b.exact_value, "k={k}");
        assert_eq!(a.witnesses, b.witnesses, "k={k}");
    }
}

#[test]
fn wider_search_finds_nothing_new() {
    // widening the complement budget past the lower bound only adds sparser
    // graphs, which cannot beat a value already at or above it
    for (n, k) in [(7, 2), (7, 3), (8, 3)] {
        let base = ex_exact(&spec(n, k)).unwrap();
        let m = base.max_complement_edges + 2;
        let wide = ex_exact(
            &spec(n, k)
                .with_max_complement_edges(m)
                .with_strategy(Strategy::Exhaustive),
        )
        .unwrap();
        assert_eq!(base.exact_value, wide.exact_value);
        assert_eq!(base.witnesses, wide.witnesses);
    }
}

#[test]
fn witnesses_avoid_and_are_saturated() {
    for (n, k) in [(7, 2), (8, 3), (9, 3), (10, 3)] {
        let r = ex_exact(&spec(n, k)).unwrap();
        let exact = r.exact_value.unwrap();
        for code in &r.witnesses {
            let g = code.to_graph();
            assert_eq!(g.edge_count(), exact);
            assert!(max_linear_forest(&g).unwrap().size <= n - k);
            assert!(hamiltonian_completion(&g).unwrap() >= k);
            // every added edge creates a forest that is too large
            for (u, v) in g.complement().edges() {
                let mut h = g.clone();
                h.add_edge(u, v);
                assert!(
                    max_linear_forest(&h).unwrap().size > n - k,
                    "{code} +{u}{v}"
                );
            }
            // endpoints of different paths in an optimal forest are never
            // both well connected
            let f = min_isolated_max_forest(&g).unwrap();
            let ends = f.structure().endpoint_set;
            let fk = n - f.edge_count();
            for &u in &ends {
                for &v in &ends {
                    if f.component_of(u) != f.component_of(v) {
                        assert!(g.deg(u) + g.deg(v) <= n - fk, "{code}");
                    }
                }
            }
        }
    }
}

#[test]
fn two_helpers_give_the_hamiltonian_path_value() {
    for n in 5..=10 {
        let r = ex_exact(&spec(n, 2)).unwrap();
        assert!(r.complete);
        assert_eq!(r.exact_value, Some((n - 1) * (n - 2) / 2), "n={n}");
    }
}

#[test]
fn frozen_values() {
    let golden = [
        (9, 3, 21, 2),
        (10, 3, 28, 1),
        (11, 3, 36, 1),
        (12, 3, 45, 1),
        (12, 4, 38, 1),
    ];
    for (n, k, value, count) in golden {
        let v = verify_spec(&spec(n, k)).unwrap();
        assert_eq!(v.verdict, Verdict::Pass, "{:?}", v.failures);
        assert_eq!(v.result.exact_value, Some(value), "n={n} k={k}");
        assert_eq!(v.result.witnesses.len(), count, "n={n} k={k}");
        let lower = lower_bound(n, k).unwrap() as usize;
        let upper = upper_bound(n, k).unwrap() as usize;
        assert!(lower <= value && value <= upper);
    }
}

#[test]
fn construction_is_a_witness_exactly_at_the_lower_bound() {
    let r = ex_exact(&spec(12, 4)).unwrap();
    let g0 = canonical_code(&clique_plus_isolated(12, 4).unwrap()).unwrap();
    assert!(r.exact_value.unwrap() > lower_bound(12, 4).unwrap() as usize);
    assert!(!r.witnesses.contains(&g0));
    let r = ex_exact(&spec(11, 3)).unwrap();
    let g0 = canonical_code(&clique_plus_isolated(11, 3).unwrap()).unwrap();
    assert_eq!(r.witnesses, vec![g0]);
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let one = ex_exact(&spec(9, 3).with_workers(1)).unwrap();
    for w in [2, 8] {
        let other = ex_exact(&spec(9, 3).with_workers(w)).unwrap();
        assert_eq!(one.exact_value, other.exact_value);
        assert_eq!(one.witnesses, other.witnesses);
        assert_eq!(one.enumerated, other.enumerated);
    }
}

#[test]
fn out_of_range_parameters_are_rejected() {
    assert!(SearchSpec::new(5, 0).is_err());
    assert!(SearchSpec::new(5, 6).is_err());
    assert!(SearchSpec::new(0, 0).is_err());
    assert!(SearchSpec::new(17, 3).is_err());
}
