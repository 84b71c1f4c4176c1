//! Subset dynamic programmes for minimum path covers and Hamiltonian cycles.
//!
//! `cost[S]` is the minimum number of paths covering the induced subgraph on
//! `S` and `ends[S]` the vertices that end the last path of some minimum
//! cover. Keeping only minimum-cost states is exact: any state one path
//! worse is reproduced by opening a new path from a minimum state.

use crate::forest::LinearForest;
use crate::graph::{Bits, Graph};

/// Largest order handled by [`PathCoverTable`].
pub const MAX_DP_VERTICES: usize = 24;
/// Largest order handled by [`IsolatedTable`].
pub const MAX_ISOLATED_DP_VERTICES: usize = 22;

pub(crate) struct PathCoverTable {
    n: usize,
    rows: Vec<u64>,
    cost: Vec<u8>,
    ends: Vec<u32>,
}

impl PathCoverTable {
    pub(crate) fn build(g: &Graph) -> Self {
        let n = g.n();
        assert!(n <= MAX_DP_VERTICES);
        let size = 1usize << n;
        let mut cost = vec![0u8; size];
        let mut ends = vec![0u32; size];
        let rows: Vec<u64> = g.rows().to_vec();
        for s in 1..size {
            let mut best = u8::MAX;
            let mut best_ends = 0u32;
            let mut rest = s;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let prev = s & !(1 << v);
                let c = cost[prev] + (ends[prev] as u64 & rows[v] == 0) as u8;
                if c < best {
                    best = c;
                    best_ends = 1 << v;
                } else if c == best {
                    best_ends |= 1 << v;
                }
            }
            cost[s] = best;
            ends[s] = best_ends;
        }
        PathCoverTable {
            n,
            rows,
            cost,
            ends,
        }
    }

    /// Minimum path cover size of the whole graph.
    pub(crate) fn min_paths(&self) -> usize {
        self.cost[(1usize << self.n) - 1] as usize
    }

    /// A minimum cover, rebuilt from the full set by always taking the
    /// smallest admissible vertex.
    pub(crate) fn witness(&self) -> LinearForest {
        let mut paths = Vec::new();
        let mut s = (1usize << self.n) - 1;
        if s == 0 {
            return LinearForest { paths };
        }
        let mut v = self.ends[s].trailing_zeros() as usize;
        let mut current = Vec::new();
        loop {
            current.push(v);
            let c = self.cost[s];
            let prev = s & !(1 << v);
            if prev == 0 {
                paths.push(std::mem::take(&mut current));
                break;
            }
            let link = self.ends[prev] as u64 & self.rows[v];
            if self.cost[prev] == c && link != 0 {
                v = link.trailing_zeros() as usize;
            } else {
                debug_assert_eq!(self.cost[prev] + 1, c);
                paths.push(std::mem::take(&mut current));
                v = self.ends[prev].trailing_zeros() as usize;
            }
            s = prev;
        }
        LinearForest { paths }.normalized()
    }
}

/// Whether `g` has a Hamiltonian cycle, by extending paths from vertex 0.
pub(crate) fn has_hamiltonian_cycle(g: &Graph) -> bool {
    let n = g.n();
    assert!(n <= MAX_DP_VERTICES);
    if n < 3 {
        return false;
    }
    // reach[S >> 1]: possible last vertices of a path from 0 through S (0 in S)
    let size = 1usize << (n - 1);
    let mut reach = vec![0u32; size];
    reach[0] = 1;
    for half in 0..size {
        let r = reach[half];
        if r == 0 {
            continue;
        }
        let s = (half << 1 | 1) as u64;
        for v in Bits(r as u64) {
            for w in Bits(g.row(v) & !s) {
                reach[((s | 1 << w) >> 1) as usize] |= 1 << w;
            }
        }
    }
    reach[size - 1] as u64 & g.row(0) != 0
}

/// Lexicographic (paths, isolated vertices) optimum, encoded as
/// `paths * weight + isolated` with `weight = n + 1`.
///
/// `best[S]` is the optimum over covers of `S`; `open[S * n + v]` is the
/// excess over `best[S]` of the best cover whose last path has at least one
/// edge and ends at `v` (`u8::MAX` when absent). A last path consisting of `v`
/// alone costs `best[S - v] + weight + 1` and is not stored. Excesses above
/// `weight` are dominated by opening a new path from a `best` state.
pub(crate) struct IsolatedTable {
    n: usize,
    rows: Vec<u64>,
    weight: u16,
    best: Vec<u16>,
    open: Vec<u8>,
}

const ABSENT: u8 = u8::MAX;

impl IsolatedTable {
    pub(crate) fn build(g: &Graph) -> Self {
        let n = g.n();
        assert!(n <= MAX_ISOLATED_DP_VERTICES);
        let weight = n as u16 + 1;
        let size = 1usize << n;
        let rows: Vec<u64> = g.rows().to_vec();
        let mut best = vec![0u16; size];
        let mut open = vec![ABSENT; size * n.max(1)];
        let mut vals = vec![u16::MAX; n];
        for s in 1..size {
            let mut b = u16::MAX;
            for v in Bits(s as u64) {
                let prev = s & !(1 << v);
                let mut val = u16::MAX;
                if prev != 0 {
                    for u in Bits(rows[v] & prev as u64) {
                        let ext = open[prev * n + u];
                        if ext != ABSENT {
                            val = val.min(best[prev] + ext as u16);
                        }
                        // u was alone; joining v removes one isolated vertex
                        val = val.min(best[prev & !(1 << u)] + weight);
                    }
                }
                vals[v] = val;
                b = b.min(val).min(best[prev] + weight + 1);
            }
            best[s] = b;
            for v in Bits(s as u64) {
                let val = vals[v];
                if val != u16::MAX && val - b <= weight {
                    open[s * n + v] = (val - b) as u8;
                }
            }
        }
        IsolatedTable {
            n,
            rows,
            weight,
            best,
            open,
        }
    }

    fn open_value(&self, s: usize, v: usize) -> Option<u16> {
        let e = self.open[s * self.n + v];
        (e != ABSENT).then(|| self.best[s] + e as u16)
    }

    /// (paths, isolated) of the optimum.
    pub(crate) fn optimum(&self) -> (usize, usize) {
        let b = self.best[(1usize << self.n) - 1];
        ((b / self.weight) as usize, (b % self.weight) as usize)
    }

    pub(crate) fn witness(&self) -> LinearForest {
        enum State {
            Best,
            Open(usize),
        }
        let mut paths = Vec::new();
        let mut current: Vec<usize> = Vec::new();
        let mut s = (1usize << self.n) - 1;
        let mut state = State::Best;
        while s != 0 {
            match state {
                State::Best => {
                    let target = self.best[s];
                    let mut next = None;
                    for v in Bits(s as u64) {
                        if self.open_value(s, v) == Some(target) {
                            next = Some(State::Open(v));
                            break;
                        }
                        if self.best[s & !(1 << v)] + self.weight + 1 == target {
                            paths.push(vec![v]);
                            s &= !(1 << v);
                            next = Some(State::Best);
                            break;
                        }
                    }
                    state = next.expect("optimum is attained by some state");
                }
                State::Open(v) => {
                    let target = self.open_value(s, v).expect("open state exists");
                    current.push(v);
                    let prev = s & !(1 << v);
                    let mut next = None;
                    for u in Bits(self.rows[v] & prev as u64) {
                        if self.open_value(prev, u) == Some(target) {
                            next = Some(State::Open(u));
                            break;
                        }
                        if self.best[prev & !(1 << u)] + self.weight == target {
                            current.push(u);
                            paths.push(std::mem::take(&mut current));
                            s = prev & !(1 << u);
                            next = Some(State::Best);
                            break;
                        }
                    }
                    state = next.expect("open state has a predecessor");
                    if let State::Open(_) = state {
                        s = prev;
                    }
                }
            }
        }
        LinearForest { paths }.normalized()
    }
}
