//! Canonical labelling of small graphs.
//!
//! Individualisation-refinement: the vertex set is refined to an equitable
//! ordered partition, the first non-singleton cell is split by
//! individualising each of its vertices in turn, and every discrete partition
//! reached gives a relabelled adjacency matrix. The largest matrix is the
//! canonical form. Automorphisms discovered at the leaves prune the tree by
//! orbits and by jumping back to the point where a leaf's path left the
//! first (or best) path.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::CanonError;
use crate::graph::{Bits, Graph, MAX_VERTICES};
use crate::graph6;

/// Largest order accepted by the canonical labelling.
pub const MAX_CANON_VERTICES: usize = 16;

/// Byte string identifying an isomorphism class: the graph6 encoding of the
/// canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Box<[u8]>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("graph6 is ASCII")
    }

    /// The canonical representative of the class.
    pub fn to_graph(&self) -> Graph {
        graph6::from_graph6(self.as_str()).expect("canonical codes are valid graph6")
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.as_str())
    }
}

/// A canonical relabelling: vertex `v` of the input sits at `position[v]` in `form`.
#[derive(Clone, Debug)]
pub struct Labelling {
    pub position: Vec<usize>,
    pub form: Graph,
}

impl Labelling {
    pub fn code(&self) -> CanonicalCode {
        CanonicalCode(
            graph6::to_graph6(&self.form)
                .into_bytes()
                .into_boxed_slice(),
        )
    }
}

pub fn canonical_labelling(g: &Graph) -> Result<Labelling, CanonError> {
    let n = g.n();
    if n > MAX_CANON_VERTICES {
        return Err(CanonError::TooLarge {
            n,
            max: MAX_CANON_VERTICES,
        });
    }
    Ok(labelling_unchecked(g))
}

pub fn canonical_form(g: &Graph) -> Result<Graph, CanonError> {
    canonical_labelling(g).map(|l| l.form)
}

pub fn canonical_code(g: &Graph) -> Result<CanonicalCode, CanonError> {
    canonical_labelling(g).map(|l| l.code())
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool, CanonError> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

pub(crate) fn labelling_unchecked(g: &Graph) -> Labelling {
    let n = g.n();
    let mut search = Search {
        rows: g.rows(),
        n,
        path: Vec::with_capacity(n),
        first: None,
        best: None,
        generators: Vec::new(),
    };
    let mut root = Partition {
        cells: [0; MAX_VERTICES],
        len: 0,
    };
    if n > 0 {
        root.cells[0] = g.vertex_mask();
        root.len = 1;
    }
    search.visit(root);
    let best = search.best.expect("the search tree has at least one leaf");
    let mut position = vec![0; n];
    for (i, &v) in best.order.iter().enumerate() {
        position[v] = i;
    }
    Labelling {
        position,
        form: Graph::from_rows(best.code).expect("relabelled rows are a valid graph"),
    }
}

/// Ordered partition of the vertex set as a list of cell bitsets.
#[derive(Clone, Copy)]
struct Partition {
    cells: [u64; MAX_VERTICES],
    len: usize,
}

impl Partition {
    fn insert(&mut self, at: usize, cell: u64) {
        self.cells.copy_within(at..self.len, at + 1);
        self.cells[at] = cell;
        self.len += 1;
    }

    /// Splits cell `x` by the number of neighbours each vertex has in `splitter`.
    /// Returns the number of cells that replaced it (1 if nothing changed).
    fn split_by(&mut self, rows: &[u64], x: usize, splitter: u64) -> usize {
        let cell = self.cells[x];
        let mut by_count = [0u64; MAX_VERTICES + 1];
        let mut lo = usize::MAX;
        let mut hi = 0;
        for v in Bits(cell) {
            let c = (rows[v] & splitter).count_ones() as usize;
            by_count[c] |= 1u64 << v;
            lo = lo.min(c);
            hi = hi.max(c);
        }
        if lo == hi {
            return 1;
        }
        self.cells[x] = by_count[lo];
        let mut at = x + 1;
        for part in &by_count[lo + 1..=hi] {
            if *part != 0 {
                self.insert(at, *part);
                at += 1;
            }
        }
        at - x
    }

    /// Refines to the coarsest equitable partition below the current one.
    fn refine(&mut self, rows: &[u64]) {
        loop {
            let mut changed = false;
            let mut s = 0;
            while s < self.len {
                let splitter = self.cells[s];
                let mut x = 0;
                while x < self.len {
                    let cell = self.cells[x];
                    if cell & (cell - 1) != 0 {
                        let parts = self.split_by(rows, x, splitter);
                        if parts > 1 {
                            changed = true;
                        }
                        x += parts;
                    } else {
                        x += 1;
                    }
                }
                s += 1;
            }
            if !changed {
                break;
            }
        }
    }
}

struct Leaf {
    order: Vec<usize>,
    code: Vec<u64>,
    path: Vec<usize>,
}

struct Search<'a> {
    rows: &'a [u64],
    n: usize,
    path: Vec<usize>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    /// Automorphisms found so far, as vertex maps.
    generators: Vec<Vec<usize>>,
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Search<'_> {
    /// Returns `Some(d)` when the caller should unwind to depth `d`.
    fn visit(&mut self, mut p: Partition) -> Option<usize> {
        p.refine(self.rows);
        if p.len == self.n {
            return self.leaf(&p);
        }
        let depth = self.path.len();
        let target = (0..p.len)
            .find(|&i| p.cells[i] & (p.cells[i] - 1) != 0)
            .expect("non-discrete partition has a non-singleton cell");
        let cell = p.cells[target];
        let mut explored = 0u64;
        for v in Bits(cell) {
            if explored != 0 && self.equivalent_to_explored(v, explored) {
                continue;
            }
            explored |= 1u64 << v;
            let mut child = p;
            child.cells[target] = 1u64 << v;
            child.insert(target + 1, cell & !(1u64 << v));
            self.path.push(v);
            let jump = self.visit(child);
            self.path.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    /// Whether `v` shares an orbit with an explored sibling under the
    /// automorphisms found so far that fix the current path pointwise.
    fn equivalent_to_explored(&self, v: usize, explored: u64) -> bool {
        let mut parent: [u8; MAX_VERTICES] = [0; MAX_VERTICES];
        for (i, p) in parent.iter_mut().enumerate().take(self.n) {
            *p = i as u8;
        }
        fn find(parent: &mut [u8; MAX_VERTICES], mut x: usize) -> usize {
            while parent[x] as usize != x {
                parent[x] = parent[parent[x] as usize];
                x = parent[x] as usize;
            }
            x
        }
        let mut any = false;
        for gen in &self.generators {
            if self.path.iter().any(|&p| gen[p] != p) {
                continue;
            }
            any = true;
            for (x, &y) in gen.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a.max(b)] = a.min(b) as u8;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        Bits(explored).any(|u| find(&mut parent, u) == root)
    }

    fn leaf(&mut self, p: &Partition) -> Option<usize> {
        let n = self.n;
        let mut order = Vec::with_capacity(n);
        let mut pos = [0usize; MAX_VERTICES];
        for (i, &c) in p.cells[..p.len].iter().enumerate() {
            let v = c.trailing_zeros() as usize;
            order.push(v);
            pos[v] = i;
        }
        let code: Vec<u64> = order
            .iter()
            .map(|&v| Bits(self.rows[v]).fold(0u64, |acc, w| acc | 1u64 << pos[w]))
            .collect();

        let Some(first) = &self.first else {
            let leaf = Leaf {
                order,
                code,
                path: self.path.clone(),
            };
            self.best = Some(Leaf {
                order: leaf.order.clone(),
                code: leaf.code.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if code == first.code {
            let gen: Vec<usize> = (0..n).map(|v| first.order[pos[v]]).collect();
            let level = common_prefix(&self.path, &first.path);
            self.generators.push(gen);
            return Some(level);
        }
        let best = self.best.as_ref().expect("best is set with first");
        match code.cmp(&best.code) {
            std::cmp::Ordering::Equal => {
                let gen: Vec<usize> = (0..n).map(|v| best.order[pos[v]]).collect();
                let level = common_prefix(&self.path, &best.path);
                self.generators.push(gen);
                Some(level)
            }
            std::cmp::Ordering::Greater => {
                self.best = Some(Leaf {
                    order,
                    code,
                    path: self.path.clone(),
                });
                None
            }
            std::cmp::Ordering::Less => None,
        }
    }
}
