use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graphs are limited to 64 vertices, got {0}")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("adjacency is not symmetric between {0} and {1}")]
    Asymmetric(usize, usize),
    #[error("{0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("malformed graph6 header")]
    BadHeader,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    ByteOutOfRange { offset: usize, byte: u8 },
    #[error("graph6 body too short: expected {expected} bytes, got {got}")]
    Truncated { expected: usize, got: usize },
    #[error("{0} trailing bytes after the graph6 body")]
    TrailingGarbage(usize),
    #[error("nonzero padding bits in the last graph6 byte")]
    NonzeroPadding,
    #[error("graph6 encodes {0} vertices; at most 64 are supported")]
    TooManyVertices(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("canonical labelling supports at most {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("{what} supports at most {max} vertices, got {n}")]
    TooLarge {
        what: &'static str,
        n: usize,
        max: usize,
    },
    #[error("Hamiltonian completion is undefined for fewer than 3 vertices (n = {0})")]
    TooFewVertices(usize),
    #[error("graph has {graph} vertices but the family is over {family}")]
    OrderMismatch { graph: usize, family: usize },
    #[error("family parameter k must be at least 1")]
    BadFamily,
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AugmentError {
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("not a Hamiltonian path of the graph: {0}")]
    NotHamiltonianPath(String),
    #[error("endpoint degree sum {sum} is below the required {required}")]
    DegreeSumTooSmall { sum: usize, required: usize },
    #[error("forest is not valid in the graph: {0}")]
    InvalidForest(String),
    #[error("forest has {edges} edges but n - k = {expected}")]
    EdgeCountMismatch { edges: usize, expected: usize },
    #[error("vertex {0} is not an endpoint of any path of the forest")]
    NotEndpoint(usize),
    #[error("vertices {0} and {1} are endpoints of the same component")]
    SameComponent(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("parameters outside the domain (n = {n}, k = {k}): {reason}")]
    Domain {
        n: usize,
        k: usize,
        reason: &'static str,
    },
    #[error("integer overflow computing a binomial coefficient")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("parameters outside the search domain (n = {n}, k = {k}): {reason}")]
    Domain {
        n: usize,
        k: usize,
        reason: &'static str,
    },
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}
