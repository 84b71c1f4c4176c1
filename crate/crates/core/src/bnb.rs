//! Branch and bound for maximum spanning linear forests, for graphs beyond
//! the subset DP or as an independent check of it.
//!
//! Paths are grown one at a time. A new path starts at the remaining vertex of
//! smallest remaining degree; it is extended forwards, then (after the
//! forward side is closed) backwards from its start, so the start may end up
//! interior. Neighbours are tried in order of increasing remaining degree.
//! A node is cut when its edges plus one edge per remaining vertex, minus one
//! for every remaining component that no open end can reach, cannot beat the
//! incumbent.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::budget::{Budget, Meter};
use crate::error::SolverError;
use crate::forest::LinearForest;
use crate::graph::{Bits, Graph};

#[derive(Clone, Debug)]
struct Node {
    remaining: u64,
    edges: usize,
    done: Vec<Vec<usize>>,
    /// Path under construction; `forward` tells which end is open.
    current: Vec<usize>,
    forward: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Find the maximum, pruning anything that cannot strictly improve.
    Optimise,
    /// Find the first forest in search order reaching `target`.
    FirstWith(usize),
}

struct Solver<'a> {
    g: &'a Graph,
    meter: &'a Meter,
    shared_best: &'a AtomicUsize,
    best: Option<(usize, Vec<Vec<usize>>)>,
    mode: Mode,
    out_of_budget: bool,
}

fn remaining_degree(g: &Graph, v: usize, remaining: u64) -> u32 {
    (g.row(v) & remaining).count_ones()
}

fn order_by_degree(g: &Graph, candidates: u64, remaining: u64) -> Vec<usize> {
    let mut vs: Vec<usize> = Bits(candidates).collect();
    vs.sort_by_key(|&v| (remaining_degree(g, v, remaining), v));
    vs
}

impl Node {
    fn root(g: &Graph) -> Node {
        Node {
            remaining: g.vertex_mask(),
            edges: 0,
            done: Vec::new(),
            current: Vec::new(),
            forward: true,
        }
    }

    fn open_ends(&self) -> u64 {
        match (self.current.first(), self.current.last()) {
            (Some(&s), Some(&e)) if self.forward => 1u64 << s | 1u64 << e,
            (Some(&s), _) => 1u64 << s,
            _ => 0,
        }
    }

    /// Largest edge count any completion can reach.
    fn upper_bound(&self, g: &Graph) -> usize {
        let reach = Bits(self.open_ends()).fold(0u64, |acc, v| acc | g.row(v));
        let mut unseen = self.remaining;
        let mut lost = 0;
        while unseen != 0 {
            let seed = unseen & unseen.wrapping_neg();
            let mut comp = seed;
            let mut frontier = seed;
            while frontier != 0 {
                let grow =
                    Bits(frontier).fold(0u64, |acc, v| acc | g.row(v)) & self.remaining & !comp;
                comp |= grow;
                frontier = grow;
            }
            unseen &= !comp;
            if comp & reach == 0 {
                lost += 1;
            }
        }
        self.edges + self.remaining.count_ones() as usize - lost
    }

    fn children(&self, g: &Graph) -> Vec<Node> {
        let mut out = Vec::new();
        if self.current.is_empty() {
            let start = order_by_degree(g, self.remaining, self.remaining)[0];
            let mut child = self.clone();
            child.remaining &= !(1u64 << start);
            child.current.push(start);
            child.forward = true;
            out.push(child);
            return out;
        }
        let end = if self.forward {
            *self.current.last().unwrap()
        } else {
            self.current[0]
        };
        for w in order_by_degree(g, g.row(end) & self.remaining, self.remaining) {
            let mut child = self.clone();
            child.remaining &= !(1u64 << w);
            child.edges += 1;
            if self.forward {
                child.current.push(w);
            } else {
                child.current.insert(0, w);
            }
            out.push(child);
        }
        let mut closed = self.clone();
        if self.forward && self.current.len() > 1 {
            // a lone start vertex has no second side to grow
            closed.forward = false;
        } else {
            closed.done.push(std::mem::take(&mut closed.current));
            closed.forward = true;
        }
        out.push(closed);
        out
    }

    fn is_complete(&self) -> bool {
        self.remaining == 0 && self.current.is_empty()
    }
}

impl Solver<'_> {
    fn incumbent(&self) -> Option<usize> {
        self.best.as_ref().map(|b| b.0)
    }

    fn run(&mut self, node: Node) -> bool {
        if !self.meter.charge(1) {
            self.out_of_budget = true;
            return true;
        }
        if node.is_complete() {
            let take = match self.mode {
                Mode::Optimise => self.incumbent().is_none_or(|b| node.edges > b),
                Mode::FirstWith(t) => node.edges == t,
            };
            if take {
                self.best = Some((node.edges, node.done));
                self.shared_best
                    .fetch_max(self.best.as_ref().unwrap().0 + 1, Ordering::Relaxed);
                return matches!(self.mode, Mode::FirstWith(_));
            }
            return false;
        }
        let bound = node.upper_bound(self.g);
        match self.mode {
            Mode::Optimise => {
                if self.incumbent().is_some_and(|b| bound <= b) {
                    return false;
                }
                // shared value is best + 1 so that 0 means "none yet"
                let shared = self.shared_best.load(Ordering::Relaxed);
                if shared > 0 && bound < shared - 1 {
                    return false;
                }
            }
            Mode::FirstWith(t) => {
                if bound < t {
                    return false;
                }
            }
        }
        for child in node.children(self.g) {
            if self.run(child) {
                return true;
            }
        }
        false
    }
}

/// Expands the tree breadth-first, in search order, until at least `want`
/// open nodes exist or nothing can be expanded.
fn shard_roots(g: &Graph, want: usize) -> Vec<Node> {
    let mut frontier = vec![Node::root(g)];
    for _ in 0..g.n() {
        if frontier.len() >= want || frontier.iter().all(Node::is_complete) {
            break;
        }
        frontier = frontier
            .into_iter()
            .flat_map(|node| {
                if node.is_complete() {
                    vec![node]
                } else {
                    node.children(g)
                }
            })
            .collect();
    }
    frontier
}

/// Maximum spanning linear forest by branch and bound.
///
/// The size is found with `workers` threads sharing the incumbent; the witness
/// is then the first forest of that size in the sequential search order, so it
/// does not depend on scheduling.
pub fn max_linear_forest_bnb(
    g: &Graph,
    budget: Budget,
    workers: usize,
) -> Result<(usize, LinearForest), SolverError> {
    let meter = Meter::new(budget);
    let shared = AtomicUsize::new(0);
    let size = if workers <= 1 {
        let mut solver = Solver {
            g,
            meter: &meter,
            shared_best: &shared,
            best: None,
            mode: Mode::Optimise,
            out_of_budget: false,
        };
        solver.run(Node::root(g));
        if solver.out_of_budget {
            return Err(SolverError::BudgetExhausted {
                nodes: meter.nodes(),
            });
        }
        solver
            .incumbent()
            .expect("search reaches a complete forest")
    } else {
        let roots = shard_roots(g, 8 * workers);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        let results: Vec<(Option<usize>, bool)> = pool.install(|| {
            roots
                .into_par_iter()
                .map(|root| {
                    let mut solver = Solver {
                        g,
                        meter: &meter,
                        shared_best: &shared,
                        best: None,
                        mode: Mode::Optimise,
                        out_of_budget: false,
                    };
                    solver.run(root);
                    (solver.incumbent(), solver.out_of_budget)
                })
                .collect()
        });
        if results.iter().any(|r| r.1) {
            return Err(SolverError::BudgetExhausted {
                nodes: meter.nodes(),
            });
        }
        results
            .iter()
            .filter_map(|r| r.0)
            .max()
            .expect("some shard reaches a complete forest")
    };

    let unused = AtomicUsize::new(0);
    let mut finder = Solver {
        g,
        meter: &meter,
        shared_best: &unused,
        best: None,
        mode: Mode::FirstWith(size),
        out_of_budget: false,
    };
    finder.run(Node::root(g));
    if finder.out_of_budget {
        return Err(SolverError::BudgetExhausted {
            nodes: meter.nodes(),
        });
    }
    let (_, paths) = finder.best.expect("a forest of the optimal size exists");
    Ok((size, LinearForest { paths }.normalized()))
}
