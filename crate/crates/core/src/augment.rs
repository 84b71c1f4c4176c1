//! Constructive forest augmentation.
//!
//! [`ore_rotation`] closes a Hamiltonian path whose endpoint degrees sum to at
//! least `n` into a Hamiltonian cycle. [`augment_forest`] uses it to turn a
//! spanning linear forest with `n - k` edges into one with `n - k + 1` edges
//! whenever two endpoints of different paths have degree sum at least
//! `n - k + 1`: the paths are threaded through `k - 1` helper vertices joined
//! to everything, the resulting Hamiltonian path is rotated into a cycle, and
//! deleting the helpers leaves `k - 1` paths.

use std::ops::Range;

use crate::error::{AugmentError, GraphError};
use crate::forest::LinearForest;
use crate::graph::{low_bits, Graph, MAX_VERTICES};

/// A graph joined with `helper_count` extra vertices, each adjacent to every
/// original vertex and to no other helper.
#[derive(Clone, Debug)]
pub struct JoinContext {
    pub base: Graph,
    pub helper_count: usize,
    pub joined: Graph,
}

impl JoinContext {
    /// Vertex indices of the helpers in `joined`.
    pub fn helpers(&self) -> Range<usize> {
        self.base.n()..self.base.n() + self.helper_count
    }
}

/// Joins `g` with `k - 1` independent helper vertices.
pub fn build_join(g: &Graph, k: usize) -> Result<JoinContext, AugmentError> {
    if k == 0 {
        return Err(GraphError::InvalidParameter("k must be at least 1".into()).into());
    }
    let n = g.n();
    let helper_count = k - 1;
    let total = n + helper_count;
    if total > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(total).into());
    }
    let mut rows: Vec<u64> = g.rows().to_vec();
    let helper_bits = low_bits(total) & !low_bits(n);
    for row in rows.iter_mut() {
        *row |= helper_bits;
    }
    rows.extend(std::iter::repeat_n(low_bits(n), helper_count));
    Ok(JoinContext {
        base: g.clone(),
        helper_count,
        joined: Graph::from_rows(rows)?,
    })
}

fn check_hamiltonian_path(g: &Graph, path: &[usize]) -> Result<(), AugmentError> {
    let n = g.n();
    if path.len() != n {
        return Err(AugmentError::NotHamiltonianPath(format!(
            "{} vertices listed, graph has {n}",
            path.len()
        )));
    }
    let mut seen = 0u64;
    for &v in path {
        if v >= n || seen >> v & 1 == 1 {
            return Err(AugmentError::NotHamiltonianPath(format!(
                "vertex {v} is out of range or repeated"
            )));
        }
        seen |= 1u64 << v;
    }
    if let Some(w) = path.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
        return Err(AugmentError::NotHamiltonianPath(format!(
            "{}-{} is not an edge",
            w[0], w[1]
        )));
    }
    Ok(())
}

/// Turns a Hamiltonian path with endpoint degree sum at least `n` into a
/// Hamiltonian cycle (returned as a vertex sequence starting at the path's
/// first vertex; the closing edge is implied).
///
/// If the endpoints are adjacent the path is already a cycle. Otherwise the
/// first position `i` with `path[0] ~ path[i + 1]` and `path[i] ~ path[n - 1]`
/// is taken and the tail after `i` is reversed.
pub fn ore_rotation(g: &Graph, path: &[usize]) -> Result<Vec<usize>, AugmentError> {
    let n = g.n();
    if n < 3 {
        return Err(GraphError::InvalidParameter(format!(
            "a Hamiltonian cycle needs at least 3 vertices, got {n}"
        ))
        .into());
    }
    check_hamiltonian_path(g, path)?;
    let (u, v) = (path[0], path[n - 1]);
    let sum = g.deg(u) + g.deg(v);
    if sum < n {
        return Err(AugmentError::DegreeSumTooSmall { sum, required: n });
    }
    if g.has_edge(u, v) {
        return Ok(path.to_vec());
    }
    let i = (0..n - 1)
        .find(|&i| g.has_edge(u, path[i + 1]) && g.has_edge(path[i], v))
        .expect("degree sum >= n forces a crossing pair");
    let mut cycle = path[..=i].to_vec();
    cycle.extend(path[i + 1..].iter().rev());
    Ok(cycle)
}

/// Whether `cycle` lists every vertex once with consecutive (and last-first)
/// vertices adjacent.
pub fn is_hamiltonian_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let n = g.n();
    n >= 3 && check_hamiltonian_path(g, cycle).is_ok() && g.has_edge(cycle[0], cycle[n - 1])
}

/// Builds a spanning linear forest with `n - k + 1` edges from `f`, which
/// must have exactly `n - k` edges, given endpoints `u`, `v` of different
/// paths of `f` with `d(u) + d(v) >= n - k + 1`.
///
/// The path through `u` goes first (starting at `u`), the path through `v`
/// last (ending at `v`), the others in between in their order in `f`.
pub fn augment_forest(
    g: &Graph,
    f: &LinearForest,
    k: usize,
    u: usize,
    v: usize,
) -> Result<LinearForest, AugmentError> {
    let n = g.n();
    f.check(g)
        .map_err(|d| AugmentError::InvalidForest(d.to_string()))?;
    if k < 2 || k > n {
        return Err(GraphError::InvalidParameter(format!("k must lie in 2..={n}, got {k}")).into());
    }
    if f.edge_count() != n - k {
        return Err(AugmentError::EdgeCountMismatch {
            edges: f.edge_count(),
            expected: n - k,
        });
    }
    for x in [u, v] {
        if x >= n || !f.is_endpoint(x) {
            return Err(AugmentError::NotEndpoint(x));
        }
    }
    let cu = f.component_of(u).expect("endpoint lies on a path");
    let cv = f.component_of(v).expect("endpoint lies on a path");
    if cu == cv {
        return Err(AugmentError::SameComponent(u, v));
    }
    let sum = g.deg(u) + g.deg(v);
    if sum < n - k + 1 {
        return Err(AugmentError::DegreeSumTooSmall {
            sum,
            required: n - k + 1,
        });
    }

    let join = build_join(g, k)?;
    let mut first = f.paths[cu].clone();
    if first[0] != u {
        first.reverse();
    }
    let mut last = f.paths[cv].clone();
    if *last.last().unwrap() != v {
        last.reverse();
    }
    let middle = f
        .paths
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != cu && i != cv)
        .map(|(_, p)| p.clone());
    let ordered: Vec<Vec<usize>> = std::iter::once(first)
        .chain(middle)
        .chain(std::iter::once(last))
        .collect();

    let mut threaded = Vec::with_capacity(join.joined.n());
    for (p, helper) in ordered.iter().zip(join.helpers().map(Some).chain([None])) {
        threaded.extend_from_slice(p);
        if let Some(h) = helper {
            threaded.push(h);
        }
    }
    let cycle = ore_rotation(&join.joined, &threaded)?;

    // start just after a helper so no path wraps around the end
    let start = cycle
        .iter()
        .position(|&x| x >= n)
        .expect("k >= 2 gives a helper");
    let mut paths = Vec::with_capacity(k - 1);
    let mut current = Vec::new();
    for &x in cycle[start + 1..].iter().chain(&cycle[..=start]) {
        if x >= n {
            if !current.is_empty() {
                paths.push(std::mem::take(&mut current));
            }
        } else {
            current.push(x);
        }
    }
    Ok(LinearForest { paths }.normalized())
}

/// Repeatedly attaches isolated vertices of `f` to other paths without
/// losing edges.
///
/// For an isolated `x` adjacent to `y`: if `y` is isolated too the two form
/// a path; if `y` ends a path, `x` extends it; if `y = y_t` is interior to
/// `y_1 ... y_m` (and the path is not just `y_1 y_2 y_3` with `t = 2`) the path
/// is re-split as `y_1 y_2 x` + `y_3 ... y_m` when `t = 2`, or as
/// `y_1 ... y_(t-1)` + `x y_t ... y_m` when `t >= 3`. Isolated vertices are
/// tried in increasing order, then paths by index, then positions along the
/// path; every move removes at least one isolated vertex.
pub fn reduce_isolated(g: &Graph, f: &LinearForest) -> LinearForest {
    debug_assert!(f.check(g).is_ok());
    let mut paths = f.paths.clone();
    while apply_one_move(g, &mut paths) {}
    LinearForest { paths }.normalized()
}

fn apply_one_move(g: &Graph, paths: &mut Vec<Vec<usize>>) -> bool {
    let mut isolated: Vec<(usize, usize)> = paths
        .iter()
        .enumerate()
        .filter(|(_, p)| p.len() == 1)
        .map(|(i, p)| (p[0], i))
        .collect();
    isolated.sort_unstable();
    for &(x, xi) in &isolated {
        for pi in 0..paths.len() {
            if pi == xi {
                continue;
            }
            let p = &paths[pi];
            let m = p.len();
            let replacement: Option<Vec<Vec<usize>>> = if m == 1 {
                g.has_edge(x, p[0]).then(|| vec![vec![x, p[0]]])
            } else if g.has_edge(x, p[0]) {
                let mut q = vec![x];
                q.extend_from_slice(p);
                Some(vec![q])
            } else if g.has_edge(x, p[m - 1]) {
                let mut q = p.clone();
                q.push(x);
                Some(vec![q])
            } else {
                (1..m - 1)
                    .filter(|_| m > 3)
                    .find(|&t| g.has_edge(x, p[t]))
                    .map(|t| {
                        if t == 1 {
                            vec![vec![p[0], p[1], x], p[2..].to_vec()]
                        } else {
                            let mut tail = vec![x];
                            tail.extend_from_slice(&p[t..]);
                            vec![p[..t].to_vec(), tail]
                        }
                    })
            };
            if let Some(mut pieces) = replacement {
                let rest = pieces.split_off(1);
                paths[pi] = pieces.pop().unwrap();
                paths.extend(rest);
                paths.remove(xi);
                return true;
            }
        }
    }
    false
}
