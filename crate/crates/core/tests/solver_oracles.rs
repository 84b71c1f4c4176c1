use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spanlf_core::{
    avoids_family, enumerate_candidates, hamiltonian_completion, max_linear_forest,
    max_linear_forest_with, min_isolated_max_forest, Budget, FamilySpec, Graph, Method, SearchSpec,
    SolverConfig,
};

fn all_classes(n: usize) -> Vec<Graph> {
    let spec = SearchSpec::new(n, 1)
        .unwrap()
        .with_budget(Budget::unlimited())
        .with_max_complement_edges(n * (n - 1) / 2);
    let c = enumerate_candidates(&spec).unwrap();
    assert!(c.complete);
    c.graphs
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// Any linear forest can be laid out along some vertex order with each path
/// contiguous, so the maximum is the best count of adjacent consecutive pairs.
fn forest_by_orders(g: &Graph, orders: &[Vec<usize>]) -> usize {
    orders
        .iter()
        .map(|o| o.windows(2).filter(|w| g.has_edge(w[0], w[1])).count())
        .max()
        .unwrap_or(0)
}

fn hamiltonian_by_orders(g: &Graph, orders: &[Vec<usize>]) -> bool {
    orders
        .iter()
        .any(|o| o.windows(2).all(|w| g.has_edge(w[0], w[1])) && g.has_edge(o[0], o[o.len() - 1]))
}

const DP: SolverConfig = SolverConfig {
    method: Method::SubsetDp,
    budget: Budget {
        max_nodes: None,
        max_time: None,
    },
    workers: 1,
};

const BNB: SolverConfig = SolverConfig {
    method: Method::BranchAndBound,
    ..DP
};

#[test]
fn small_classes_match_order_oracle() {
    for n in 1..=7 {
        let orders = permutations(n);
        for g in all_classes(n) {
            let expected = forest_by_orders(&g, &orders);
            let dp = max_linear_forest_with(&g, &DP).unwrap();
            let bnb = max_linear_forest_with(&g, &BNB).unwrap();
            assert_eq!(dp.size, expected, "{g:?}");
            assert_eq!(bnb.size, expected, "{g:?}");
            for w in [&dp.witness, &bnb.witness] {
                assert!(w.check(&g).is_ok());
                assert_eq!(w.edge_count(), expected);
            }
            if n >= 3 {
                let h = hamiltonian_completion(&g).unwrap();
                let oracle = if hamiltonian_by_orders(&g, &orders) {
                    0
                } else {
                    (n - expected).max(1)
                };
                assert_eq!(h, oracle, "{g:?}");
            }
        }
    }
}

#[test]
fn random_graphs_dp_agrees_with_branch_and_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..2000 {
        let n = rng.gen_range(8..=16);
        let p = rng.gen_range(0.05..0.95);
        let g = random_graph(&mut rng, n, p);
        let dp = max_linear_forest_with(&g, &DP).unwrap();
        let bnb = max_linear_forest_with(&g, &BNB).unwrap();
        assert_eq!(dp.size, bnb.size, "{g:?}");
        assert!(bnb.witness.check(&g).is_ok());
    }
}

#[test]
fn adding_edges_never_shrinks_the_forest() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for _ in 0..300 {
        let n = rng.gen_range(4..=14);
        let mut g = {
            let p = rng.gen_range(0.1..0.6);
            random_graph(&mut rng, n, p)
        };
        let mut last = max_linear_forest(&g).unwrap().size;
        for _ in 0..4 {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u != v {
                g.add_edge(u, v);
            }
            let now = max_linear_forest(&g).unwrap().size;
            assert!(now >= last && now <= last + 1);
            last = now;
        }
    }
}

#[test]
fn family_membership_matches_completion_number() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    for _ in 0..500 {
        let n = rng.gen_range(3..=12);
        let g = {
            let p = rng.gen_range(0.1..0.9);
            random_graph(&mut rng, n, p)
        };
        let h = hamiltonian_completion(&g).unwrap();
        for k in 2..=n {
            assert_eq!(
                avoids_family(&g, FamilySpec::new(n, k)).unwrap(),
                h >= k,
                "{g:?} k={k}"
            );
        }
    }
}

#[test]
fn isolated_neighbours_are_centres_of_short_paths() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    for _ in 0..500 {
        let n = rng.gen_range(3..=14);
        let g = {
            let p = rng.gen_range(0.05..0.5);
            random_graph(&mut rng, n, p)
        };
        let f = min_isolated_max_forest(&g).unwrap();
        assert!(f.check(&g).is_ok());
        assert_eq!(f.edge_count(), max_linear_forest(&g).unwrap().size);
        let centres: Vec<usize> = f
            .paths
            .iter()
            .filter(|p| p.len() == 3)
            .map(|p| p[1])
            .collect();
        for p in f.paths.iter().filter(|p| p.len() == 1) {
            for y in 0..n {
                if g.has_edge(p[0], y) {
                    assert!(centres.contains(&y), "{g:?} {f:?}");
                }
            }
        }
    }
}

#[test]
fn isolated_optimum_matches_exhaustive_covers() {
    // for each class on at most 6 vertices, try every order and every way of
    // cutting it into paths, keeping (paths, isolated) minimal
    for n in 1..=6 {
        let orders = permutations(n);
        for g in all_classes(n) {
            let mut best = (usize::MAX, usize::MAX);
            for o in &orders {
                for cuts in 0u32..1 << (n - 1) {
                    let mut lens = vec![1usize];
                    let mut ok = true;
                    for i in 1..n {
                        if cuts >> (i - 1) & 1 == 1 {
                            lens.push(1);
                        } else if g.has_edge(o[i - 1], o[i]) {
                            *lens.last_mut().unwrap() += 1;
                        } else {
                            ok = false;
                            break;
                        }
                    }
                    if ok {
                        best = best.min((lens.len(), lens.iter().filter(|&&l| l == 1).count()));
                    }
                }
            }
            let f = min_isolated_max_forest(&g).unwrap();
            let s = f.structure();
            assert_eq!((s.component_count, s.isolated_count), best, "{g:?}");
        }
    }
}
