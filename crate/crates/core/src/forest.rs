//! Spanning linear forests: vertex-disjoint paths covering every vertex.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Bits, Graph};

/// A spanning linear forest given as vertex sequences. A one-vertex sequence
/// is an isolated vertex (a path of length zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearForest {
    pub paths: Vec<Vec<usize>>,
}

/// Why a forest failed validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ForestDefect {
    EmptyPath(usize),
    VertexOutOfRange(usize),
    RepeatedVertex(usize),
    MissingVertex(usize),
    NonEdge(usize, usize),
}

impl fmt::Display for ForestDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForestDefect::EmptyPath(i) => write!(f, "path {i} is empty"),
            ForestDefect::VertexOutOfRange(v) => write!(f, "vertex {v} is out of range"),
            ForestDefect::RepeatedVertex(v) => write!(f, "vertex {v} appears more than once"),
            ForestDefect::MissingVertex(v) => write!(f, "vertex {v} is not covered"),
            ForestDefect::NonEdge(u, v) => write!(f, "{u}-{v} is not an edge of the graph"),
        }
    }
}

impl LinearForest {
    /// Every vertex of an `n`-vertex graph as its own path.
    pub fn trivial(n: usize) -> Self {
        LinearForest {
            paths: (0..n).map(|v| vec![v]).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.paths.iter().map(Vec::len).sum()
    }

    pub fn component_count(&self) -> usize {
        self.paths.len()
    }

    pub fn edge_count(&self) -> usize {
        self.vertex_count() - self.component_count()
    }

    /// Checks that the sequences partition `0..g.n()` and follow edges of `g`.
    pub fn check(&self, g: &Graph) -> Result<(), ForestDefect> {
        let n = g.n();
        let mut seen = 0u64;
        for (i, path) in self.paths.iter().enumerate() {
            if path.is_empty() {
                return Err(ForestDefect::EmptyPath(i));
            }
            for &v in path {
                if v >= n {
                    return Err(ForestDefect::VertexOutOfRange(v));
                }
                if seen >> v & 1 == 1 {
                    return Err(ForestDefect::RepeatedVertex(v));
                }
                seen |= 1u64 << v;
            }
            for w in path.windows(2) {
                if !g.has_edge(w[0], w[1]) {
                    return Err(ForestDefect::NonEdge(w[0], w[1]));
                }
            }
        }
        if let Some(v) = Bits(g.vertex_mask() & !seen).next() {
            return Err(ForestDefect::MissingVertex(v));
        }
        Ok(())
    }

    /// Index of the path containing `v`.
    pub fn component_of(&self, v: usize) -> Option<usize> {
        self.paths.iter().position(|p| p.contains(&v))
    }

    /// Whether `v` is the first or last vertex of some path.
    pub fn is_endpoint(&self, v: usize) -> bool {
        self.paths
            .iter()
            .any(|p| p.first() == Some(&v) || p.last() == Some(&v))
    }

    /// Orients each path so its first vertex is the smaller endpoint and sorts
    /// the paths by first vertex.
    pub fn normalized(mut self) -> Self {
        for p in &mut self.paths {
            if p.first() > p.last() {
                p.reverse();
            }
        }
        self.paths.sort();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("forest serialises")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Decomposition statistics.
    pub fn structure(&self) -> ForestStructure {
        forest_structure(self)
    }
}

/// Validation as a boolean; see [`LinearForest::check`] for the reason.
pub fn validate_forest(g: &Graph, f: &LinearForest) -> bool {
    f.check(g).is_ok()
}

/// Endpoint set, isolated-vertex count and component count of a forest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestStructure {
    /// Path endpoints in increasing order; an isolated vertex appears once.
    pub endpoint_set: Vec<usize>,
    pub isolated_count: usize,
    pub component_count: usize,
}

pub fn forest_structure(f: &LinearForest) -> ForestStructure {
    let mut endpoint_set: Vec<usize> = f
        .paths
        .iter()
        .flat_map(|p| [p[0], p[p.len() - 1]])
        .collect();
    endpoint_set.sort_unstable();
    endpoint_set.dedup();
    ForestStructure {
        endpoint_set,
        isolated_count: f.paths.iter().filter(|p| p.len() == 1).count(),
        component_count: f.paths.len(),
    }
}

/// Parameters of the family of linear forests of order `n` with at least
/// `n - k + 1` edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub n: usize,
    pub k: usize,
}

impl FamilySpec {
    pub fn new(n: usize, k: usize) -> Self {
        FamilySpec { n, k }
    }

    /// Fewest edges a member of the family has.
    pub fn min_edges(&self) -> usize {
        (self.n + 1).saturating_sub(self.k)
    }
}
