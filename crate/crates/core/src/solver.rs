//! Maximum spanning linear forests, minimum path covers and the Hamiltonian
//! completion number.
//!
//! A maximum spanning linear forest of an `n`-vertex graph has `n - p` edges
//! where `p` is the minimum path cover size. A graph avoids every linear
//! forest with at least `n - k + 1` edges exactly when `p >= k`, and for
//! `k >= 2` that is the same as needing at least `k` extra edges to become
//! Hamiltonian.

use serde::{Deserialize, Serialize};

use crate::bnb::max_linear_forest_bnb;
use crate::budget::{Budget, Meter};
use crate::error::SolverError;
use crate::forest::{FamilySpec, LinearForest};
use crate::graph::{Bits, Graph};
use crate::pathcover::{
    has_hamiltonian_cycle, IsolatedTable, PathCoverTable, MAX_DP_VERTICES, MAX_ISOLATED_DP_VERTICES,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Subset DP up to 24 vertices, branch and bound above.
    #[default]
    Auto,
    SubsetDp,
    BranchAndBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub method: Method,
    pub budget: Budget,
    pub workers: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            method: Method::Auto,
            budget: Budget::default(),
            workers: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxForest {
    pub size: usize,
    pub witness: LinearForest,
}

impl MaxForest {
    pub fn min_paths(&self) -> usize {
        self.witness.component_count()
    }
}

fn use_dp(g: &Graph, method: Method) -> Result<bool, SolverError> {
    match method {
        Method::Auto => Ok(g.n() <= MAX_DP_VERTICES),
        Method::SubsetDp if g.n() > MAX_DP_VERTICES => Err(SolverError::TooLarge {
            what: "the subset DP",
            n: g.n(),
            max: MAX_DP_VERTICES,
        }),
        Method::SubsetDp => Ok(true),
        Method::BranchAndBound => Ok(false),
    }
}

pub fn max_linear_forest(g: &Graph) -> Result<MaxForest, SolverError> {
    max_linear_forest_with(g, &SolverConfig::default())
}

pub fn max_linear_forest_with(g: &Graph, config: &SolverConfig) -> Result<MaxForest, SolverError> {
    if g.n() == 0 {
        return Ok(MaxForest {
            size: 0,
            witness: LinearForest { paths: vec![] },
        });
    }
    if use_dp(g, config.method)? {
        let table = PathCoverTable::build(g);
        Ok(MaxForest {
            size: g.n() - table.min_paths(),
            witness: table.witness(),
        })
    } else {
        let (size, witness) = max_linear_forest_bnb(g, config.budget, config.workers.max(1))?;
        Ok(MaxForest { size, witness })
    }
}

/// Minimum number of vertex-disjoint paths covering all vertices.
pub fn min_path_cover(g: &Graph) -> Result<usize, SolverError> {
    Ok(g.n() - max_linear_forest(g)?.size)
}

/// Minimum number of edges whose addition makes `g` Hamiltonian.
pub fn hamiltonian_completion(g: &Graph) -> Result<usize, SolverError> {
    hamiltonian_completion_with(g, &SolverConfig::default())
}

pub fn hamiltonian_completion_with(g: &Graph, config: &SolverConfig) -> Result<usize, SolverError> {
    let n = g.n();
    if n < 3 {
        return Err(SolverError::TooFewVertices(n));
    }
    let paths = n - max_linear_forest_with(g, config)?.size;
    if paths > 1 {
        // closing p disjoint paths into one cycle takes exactly p new edges
        return Ok(paths);
    }
    let hamiltonian = if use_dp(g, config.method)? {
        has_hamiltonian_cycle(g)
    } else {
        hamiltonian_cycle_search(g, config.budget)?
    };
    Ok(if hamiltonian { 0 } else { 1 })
}

/// Whether `g` contains no spanning linear forest with `n - k + 1` or more edges.
pub fn avoids_family(g: &Graph, spec: FamilySpec) -> Result<bool, SolverError> {
    avoids_family_with(g, spec, &SolverConfig::default())
}

pub fn avoids_family_with(
    g: &Graph,
    spec: FamilySpec,
    config: &SolverConfig,
) -> Result<bool, SolverError> {
    if spec.k == 0 {
        return Err(SolverError::BadFamily);
    }
    if g.n() != spec.n {
        return Err(SolverError::OrderMismatch {
            graph: g.n(),
            family: spec.n,
        });
    }
    let size = max_linear_forest_with(g, config)?.size;
    Ok(size + spec.k <= spec.n)
}

/// A maximum spanning linear forest with as few isolated vertices as possible.
pub fn min_isolated_max_forest(g: &Graph) -> Result<LinearForest, SolverError> {
    if g.n() > MAX_ISOLATED_DP_VERTICES {
        return Err(SolverError::TooLarge {
            what: "the isolated-vertex DP",
            n: g.n(),
            max: MAX_ISOLATED_DP_VERTICES,
        });
    }
    if g.n() == 0 {
        return Ok(LinearForest { paths: vec![] });
    }
    let table = IsolatedTable::build(g);
    let witness = table.witness();
    debug_assert_eq!(
        table.optimum(),
        (
            witness.component_count(),
            witness.structure().isolated_count
        )
    );
    Ok(witness)
}

/// Backtracking Hamiltonian cycle search for graphs beyond the DP.
fn hamiltonian_cycle_search(g: &Graph, budget: Budget) -> Result<bool, SolverError> {
    fn extend(g: &Graph, meter: &Meter, end: usize, used: u64) -> Option<bool> {
        if !meter.charge(1) {
            return None;
        }
        if used == g.vertex_mask() {
            return Some(g.has_edge(end, 0));
        }
        // a remaining vertex with fewer than two usable neighbours is a dead end
        let open = !used | 1 | 1u64 << end;
        for v in Bits(g.vertex_mask() & !used) {
            if (g.row(v) & open).count_ones() < 2 {
                return Some(false);
            }
        }
        for w in Bits(g.row(end) & !used) {
            match extend(g, meter, w, used | 1u64 << w) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
        }
        Some(false)
    }
    let meter = Meter::new(budget);
    extend(g, &meter, 0, 1).ok_or(SolverError::BudgetExhausted {
        nodes: meter.nodes(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g0(n: usize, k: usize) -> Graph {
        Graph::complete(n - k + 1)
            .unwrap()
            .disjoint_union(&Graph::empty(k - 1).unwrap())
            .unwrap()
    }

    #[test]
    fn complete_and_empty() {
        for n in 1..=10 {
            assert_eq!(
                max_linear_forest(&Graph::complete(n).unwrap())
                    .unwrap()
                    .size,
                n - 1
            );
            let e = max_linear_forest(&Graph::empty(n).unwrap()).unwrap();
            assert_eq!(e.size, 0);
            assert_eq!(e.witness, LinearForest::trivial(n));
        }
    }

    #[test]
    fn construction_forest_sizes() {
        let r = max_linear_forest(&g0(10, 3)).unwrap();
        assert_eq!(r.size, 7);
        assert_eq!(r.witness.structure().component_count, 3);
        for (n, k) in [(6, 2), (9, 3), (12, 4)] {
            assert_eq!(hamiltonian_completion(&g0(n, k)).unwrap(), k);
        }
    }

    #[test]
    fn completion_of_paths_and_cycles() {
        for n in 3..=12 {
            assert_eq!(
                hamiltonian_completion(&Graph::cycle(n).unwrap()).unwrap(),
                0
            );
            assert_eq!(hamiltonian_completion(&Graph::path(n).unwrap()).unwrap(), 1);
        }
        assert_eq!(
            hamiltonian_completion(&Graph::complete(2).unwrap()),
            Err(SolverError::TooFewVertices(2))
        );
    }

    #[test]
    fn branch_and_bound_route_agrees() {
        let bnb = SolverConfig {
            method: Method::BranchAndBound,
            ..SolverConfig::default()
        };
        for n in 3..=9 {
            let c = Graph::cycle(n).unwrap();
            assert_eq!(hamiltonian_completion_with(&c, &bnb).unwrap(), 0);
            let p = Graph::path(n).unwrap();
            assert_eq!(hamiltonian_completion_with(&p, &bnb).unwrap(), 1);
        }
        assert_eq!(hamiltonian_completion_with(&g0(9, 3), &bnb).unwrap(), 3);
    }

    #[test]
    fn large_graphs_fall_back_to_branch_and_bound() {
        let c = Graph::cycle(30).unwrap();
        assert_eq!(hamiltonian_completion(&c).unwrap(), 0);
        let mut p = Graph::path(30).unwrap();
        p.add_edge(0, 2);
        assert_eq!(hamiltonian_completion(&p).unwrap(), 1);
        let forced = SolverConfig {
            method: Method::SubsetDp,
            ..SolverConfig::default()
        };
        assert!(matches!(
            max_linear_forest_with(&c, &forced),
            Err(SolverError::TooLarge { .. })
        ));
    }

    #[test]
    fn family_membership() {
        for (n, k) in [(6, 2), (9, 3), (10, 4)] {
            assert!(avoids_family(&g0(n, k), FamilySpec::new(n, k)).unwrap());
        }
        for n in 3..=8 {
            for k in 2..=n {
                assert!(
                    !avoids_family(&Graph::complete(n).unwrap(), FamilySpec::new(n, k)).unwrap()
                );
            }
        }
        assert_eq!(
            avoids_family(&Graph::complete(4).unwrap(), FamilySpec::new(5, 2)),
            Err(SolverError::OrderMismatch {
                graph: 4,
                family: 5
            })
        );
        assert_eq!(
            avoids_family(&Graph::complete(4).unwrap(), FamilySpec::new(4, 0)),
            Err(SolverError::BadFamily)
        );
    }

    #[test]
    fn min_isolated_examples() {
        let kn = min_isolated_max_forest(&Graph::complete(6).unwrap()).unwrap();
        assert_eq!(kn.structure().isolated_count, 0);
        assert_eq!(kn.component_count(), 1);
        let f = min_isolated_max_forest(&g0(10, 3)).unwrap();
        assert_eq!(f.structure().isolated_count, 2);
        assert_eq!(f.edge_count(), 7);
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let s = min_isolated_max_forest(&star).unwrap();
        assert_eq!(s.structure().isolated_count, 2);
        assert_eq!(s.edge_count(), 2);
    }
}
