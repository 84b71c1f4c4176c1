//! Exact combinatorics of spanning linear forests.

pub mod augment;
pub mod bnb;
pub mod bounds;
pub mod budget;
pub mod canon;
pub mod error;
pub mod extremal;
pub mod forest;
pub mod graph;
pub mod graph6;
pub mod pathcover;
pub mod solver;

pub use augment::{augment_forest, build_join, ore_rotation, reduce_isolated, JoinContext};
pub use bounds::{
    binomial, clique_plus_isolated, lower_bound, sweep, upper_bound, verify_instance, verify_spec,
    BoundPair, CellStatus, SweepCell, SweepReport, Verdict, Verification,
};
pub use budget::Budget;
pub use canon::{canonical_code, canonical_labelling, CanonicalCode};
pub use error::*;
pub use extremal::{
    enumerate_candidates, ex_exact, witness_catalog, ExtremalResult, SearchSpec, Strategy,
};
pub use forest::{forest_structure, validate_forest, FamilySpec, ForestStructure, LinearForest};
pub use graph::Graph;
pub use graph6::{from_graph6, to_graph6};
pub use solver::{
    avoids_family, avoids_family_with, hamiltonian_completion, hamiltonian_completion_with,
    max_linear_forest, max_linear_forest_with, min_isolated_max_forest, min_path_cover, MaxForest,
    Method, SolverConfig,
};
