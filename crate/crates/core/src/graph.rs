//! Undirected simple graphs on at most 64 vertices with one `u64` adjacency row per vertex.

use std::fmt;

use crate::error::GraphError;

/// Largest supported vertex count; one adjacency row fits in a machine word.
pub const MAX_VERTICES: usize = 64;

/// Bitmask with the lowest `n` bits set.
#[inline]
pub const fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates over the set bits of a word, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// An undirected simple graph on vertices `0..n`.
///
/// Row `i` of `adj` holds the neighbors of vertex `i` as a bitset. The type
/// keeps the rows symmetric and loop-free; every mutating method preserves
/// that.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// The complete graph on `n` vertices.
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        let all = low_bits(n);
        for (v, row) in g.adj.iter_mut().enumerate() {
            *row = all & !(1u64 << v);
        }
        Ok(g)
    }

    /// The path `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        Ok(g)
    }

    /// The cycle `0-1-...-(n-1)-0`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::InvalidParameter(format!(
                "a cycle needs at least 3 vertices, got {n}"
            )));
        }
        let mut g = Graph::path(n)?;
        g.add_edge(n - 1, 0);
        Ok(g)
    }

    /// Builds a graph from an edge list, rejecting loops and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows after checking every invariant.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self, GraphError> {
        let g = Graph {
            n: rows.len(),
            adj: rows,
        };
        g.validate()?;
        Ok(g)
    }

    /// Checks symmetry, absence of loops and that no bit lies outside `0..n`.
    pub fn validate(&self) -> Result<(), GraphError> {
        if self.n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(self.n));
        }
        let outside = !low_bits(self.n);
        for (i, &row) in self.adj.iter().enumerate() {
            if row & outside != 0 {
                return Err(GraphError::VertexOutOfRange {
                    vertex: (row & outside).trailing_zeros() as usize,
                    n: self.n,
                });
            }
            if row >> i & 1 == 1 {
                return Err(GraphError::Loop(i));
            }
            for j in Bits(row) {
                if self.adj[j] >> i & 1 == 0 {
                    return Err(GraphError::Asymmetric(i, j));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Neighbor bitset of `v`. Panics if `v >= n`.
    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    /// Bitset of all vertices.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        low_bits(self.n)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Adds the edge `uv`. Panics on a loop or an out-of-range endpoint.
    #[inline]
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n, "bad edge ({u}, {v})");
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
    }

    #[inline]
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "bad edge ({u}, {v})");
        self.adj[u] &= !(1u64 << v);
        self.adj[v] &= !(1u64 << u);
    }

    /// Degree of `v`.
    pub fn degree(&self, v: usize) -> Result<usize, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(self.adj[v].count_ones() as usize)
    }

    /// Degree without the range check, for hot loops.
    #[inline]
    pub fn deg(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|r| r.count_ones() as usize).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in Bits(self.adj[u] >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    /// The graph on the same vertices whose edges are exactly the non-edges of `self`.
    pub fn complement(&self) -> Graph {
        let all = low_bits(self.n);
        Graph {
            n: self.n,
            adj: self
                .adj
                .iter()
                .enumerate()
                .map(|(v, &r)| !r & all & !(1u64 << v))
                .collect(),
        }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for (v, &row) in self.adj.iter().enumerate() {
            let mut image = 0u64;
            for w in Bits(row) {
                image |= 1u64 << perm[w];
            }
            adj[perm[v]] = image;
        }
        Graph { n: self.n, adj }
    }

    /// Subgraph induced by the vertices in `mask`, renumbered in increasing order.
    pub fn induced(&self, mask: u64) -> Graph {
        let keep: Vec<usize> = Bits(mask & self.vertex_mask()).collect();
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![0u64; keep.len()];
        for (i, &v) in keep.iter().enumerate() {
            for w in Bits(self.adj[v] & mask) {
                adj[i] |= 1u64 << index[w];
            }
        }
        Graph { n: keep.len(), adj }
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&r| r << self.n));
        Ok(Graph { n, adj })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_degrees() {
        let k6 = Graph::complete(6).unwrap();
        assert!(k6.validate().is_ok());
        assert_eq!(k6.edge_count(), 15);
        for v in 0..6 {
            assert_eq!(k6.degree(v).unwrap(), 5);
        }
    }

    #[test]
    fn empty_graph_degrees() {
        let g = Graph::empty(7).unwrap();
        assert!((0..7).all(|v| g.degree(v).unwrap() == 0));
        assert_eq!(
            g.degree(7),
            Err(GraphError::VertexOutOfRange { vertex: 7, n: 7 })
        );
    }

    #[test]
    fn complement_of_complete_is_empty() {
        for n in 0..=12 {
            let c = Graph::complete(n).unwrap().complement();
            assert_eq!(c, Graph::empty(n).unwrap());
        }
    }

    #[test]
    fn complement_counts() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let c = g.complement();
        assert!(c.validate().is_ok());
        assert_eq!(g.edge_count() + c.edge_count(), 10);
        assert_eq!(c.complement(), g);
    }

    #[test]
    fn validation_catches_bad_rows() {
        assert_eq!(
            Graph::from_rows(vec![0b10, 0b00]),
            Err(GraphError::Asymmetric(0, 1))
        );
        assert_eq!(Graph::from_rows(vec![0b1]), Err(GraphError::Loop(0)));
        assert_eq!(
            Graph::from_rows(vec![0b100, 0b000]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert!(Graph::empty(65).is_err());
        assert!(Graph::complete(64).unwrap().validate().is_ok());
    }

    #[test]
    fn induced_and_permute() {
        let p4 = Graph::path(4).unwrap();
        let sub = p4.induced(0b1110);
        assert_eq!(sub, Graph::path(3).unwrap());
        let q = p4.permute(&[3, 2, 1, 0]);
        assert_eq!(q, p4);
        assert_eq!(p4.edges(), vec![(0, 1), (1, 2), (2, 3)]);
    }
}
