//! Exact Turán numbers of spanning linear forests.
//!
//! `ex(n; L(n,k))` is the largest edge count of an `n`-vertex graph with no
//! spanning linear forest of `n - k + 1` or more edges, i.e. with minimum
//! path cover at least `k`. Near the extremum graphs are dense, so the search
//! runs over complements `C` with at most `m̄` edges and reports
//! `C(n,2) - min e(C)` over avoiding classes.
//!
//! Two strategies are available:
//!
//! * [`Strategy::Exhaustive`] generates every isomorphism class of
//!   complements with at most `m̄` edges by canonical augmentation (one edge
//!   at a time, children kept only when the added edge is equivalent to the
//!   child's canonical deletion edge).
//! * [`Strategy::Closure`] (the default) only generates complements of
//!   edge-maximal avoiders. For `k >= 2`, `G` avoids the family iff `G` joined
//!   with `k - 1` independent vertices is non-Hamiltonian, and by the
//!   Bondy-Chvátal closure an edge-maximal such `G` has
//!   `d(u) + d(v) <= n - k` for every non-adjacent pair. In the complement
//!   every edge `uv` then has `c(u) + c(v) >= n + k - 2 =: T`. Call a vertex
//!   high when `c(v) >= ceil(T/2)`: high vertices may be adjacent freely, low
//!   vertices never to each other, and a low vertex of degree `d` only to
//!   high vertices of degree at least `T - d`. So a candidate is a graph on
//!   the high vertices plus a multiset of neighbourhoods for the low ones,
//!   both enumerated with edge-budget pruning and merged by canonical code.
//!   Every extremal graph is edge-maximal, so the optimum and its full
//!   witness list are unchanged.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Duration;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{lower_bound, theorem_applies, upper_bound};
use crate::budget::{Budget, Meter};
use crate::canon::{labelling_unchecked, CanonicalCode, Labelling, MAX_CANON_VERTICES};
use crate::error::SearchError;
use crate::forest::FamilySpec;
use crate::graph::{low_bits, Bits, Graph};
use crate::solver::avoids_family;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Only complements of edge-maximal avoiders.
    #[default]
    Closure,
    /// Every complement class with at most `m̄` edges.
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub n: usize,
    pub k: usize,
    /// Largest complement edge count searched.
    pub max_complement_edges: usize,
    pub budget: Budget,
    pub workers: usize,
    pub strategy: Strategy,
}

impl SearchSpec {
    /// Parameters with `m̄ = C(n,2) - C(n-k+1,2)`: any graph with more
    /// complement edges has fewer edges than the clique-plus-isolated
    /// construction.
    pub fn new(n: usize, k: usize) -> Result<Self, SearchError> {
        if n == 0 || n > MAX_CANON_VERTICES {
            return Err(SearchError::Domain {
                n,
                k,
                reason: "the exact search supports 1 <= n <= 16",
            });
        }
        if k == 0 || k > n {
            return Err(SearchError::Domain {
                n,
                k,
                reason: "k must lie in 1..=n",
            });
        }
        let total = n * (n - 1) / 2;
        Ok(SearchSpec {
            n,
            k,
            max_complement_edges: total - lower_bound(n, k)? as usize,
            budget: Budget::default(),
            workers: 1,
            strategy: Strategy::default(),
        })
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_max_complement_edges(mut self, edges: usize) -> Self {
        self.max_complement_edges = edges;
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    fn total_pairs(&self) -> usize {
        self.n * (self.n - 1) / 2
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtremalResult {
    pub n: usize,
    pub k: usize,
    /// Set only when the search completed and found an avoiding graph.
    pub exact_value: Option<usize>,
    /// Largest avoiding edge count seen, complete or not.
    pub best_found: Option<usize>,
    /// Canonical graph6 of every extremal graph, sorted; empty unless exact.
    pub witnesses: Vec<CanonicalCode>,
    /// Isomorphism classes generated.
    pub enumerated: u64,
    pub complete: bool,
    pub lower: u64,
    pub upper: Option<u64>,
    /// `lower <= exact <= upper`, when exact and the upper bound applies.
    pub within_bounds: Option<bool>,
    pub max_complement_edges: usize,
    pub strategy: Strategy,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Newline-terminated graph6 lines of all witnesses, in sorted order.
pub fn witness_catalog(result: &ExtremalResult) -> String {
    result.witnesses.iter().map(|w| format!("{w}\n")).collect()
}

/// Candidate graphs: one per isomorphism class of `n`-vertex graphs whose
/// complement has at most `m̄` edges, ordered by decreasing edge count and
/// then canonical code.
#[derive(Clone, Debug)]
pub struct Candidates {
    pub graphs: Vec<Graph>,
    /// False when the budget ran out; `graphs` is then a partial list.
    pub complete: bool,
}

pub fn enumerate_candidates(spec: &SearchSpec) -> Result<Candidates, SearchError> {
    let meter = Meter::new(spec.budget);
    let pool = pool(spec.workers);
    let (classes, complete) = pool.install(|| {
        enumerate_classes(
            spec.n,
            spec.max_complement_edges,
            &|_: &Graph| true,
            &meter,
            spec.workers,
        )
    });
    Ok(Candidates {
        graphs: sorted_classes(classes)
            .into_iter()
            .map(|(_, c)| c.complement())
            .collect(),
        complete,
    })
}

pub fn ex_exact(spec: &SearchSpec) -> Result<ExtremalResult, SearchError> {
    let (n, k) = (spec.n, spec.k);
    let check = SearchSpec::new(n, k)?;
    let meter = Meter::new(spec.budget);
    let pool = pool(spec.workers);
    let m = spec.max_complement_edges.min(check.total_pairs());
    // the closure argument needs helper vertices, so k = 1 takes the plain route
    let strategy = if k == 1 {
        Strategy::Exhaustive
    } else {
        spec.strategy
    };

    let (classes, complete) = pool.install(|| match strategy {
        Strategy::Exhaustive => enumerate_classes(n, m, &|_: &Graph| true, &meter, spec.workers),
        Strategy::Closure => closure_classes(n, k, m, &meter, spec.workers),
    });
    let enumerated = classes.len() as u64;
    let sorted = sorted_classes(classes);

    let family = FamilySpec::new(n, k);
    let mut best = None;
    let mut witnesses = Vec::new();
    let mut level_start = 0;
    while level_start < sorted.len() {
        let edges = sorted[level_start].0;
        let level_end = level_start + sorted[level_start..].partition_point(|c| c.0 == edges);
        let found: Vec<CanonicalCode> = pool.install(|| {
            sorted[level_start..level_end]
                .par_iter()
                .filter_map(|(_, c)| {
                    let g = c.complement();
                    avoids_family(&g, family)
                        .expect("orders match and n is within the DP range")
                        .then(|| labelling_unchecked(&g).code())
                })
                .collect()
        });
        if !found.is_empty() {
            best = Some(check.total_pairs() - edges);
            witnesses = found;
            break;
        }
        level_start = level_end;
    }
    witnesses.sort();

    let lower = lower_bound(n, k)?;
    let upper = if theorem_applies(n, k) {
        Some(upper_bound(n, k)?)
    } else {
        None
    };
    let exact_value = if complete { best } else { None };
    if exact_value.is_none() {
        witnesses.clear();
    }
    let within_bounds = match (exact_value, upper) {
        (Some(v), Some(u)) => Some(lower <= v as u64 && v as u64 <= u),
        _ => None,
    };
    Ok(ExtremalResult {
        n,
        k,
        exact_value,
        best_found: best,
        witnesses,
        enumerated,
        complete,
        lower,
        upper,
        within_bounds,
        max_complement_edges: m,
        strategy,
        elapsed: meter.elapsed(),
    })
}

fn pool(workers: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool")
}

/// Complements keyed by canonical code, turned into `(edges, graph)` pairs
/// sorted by edge count then code.
fn sorted_classes(classes: BTreeMap<CanonicalCode, Graph>) -> Vec<(usize, Graph)> {
    let mut keyed: Vec<(usize, CanonicalCode, Graph)> = classes
        .into_iter()
        .map(|(code, g)| (g.edge_count(), code, g))
        .collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    keyed.into_iter().map(|(e, _, g)| (e, g)).collect()
}

// ---------------------------------------------------------------------------
// canonical augmentation

struct Node {
    graph: Graph,
    code: CanonicalCode,
}

impl Node {
    fn root(n: usize) -> Node {
        let graph = Graph::empty(n).expect("n is within range");
        let code = labelling_unchecked(&graph).code();
        Node { graph, code }
    }
}

/// Preimage of the last edge of the canonical form.
fn deletion_edge(l: &Labelling) -> (usize, usize) {
    let (a, b) = *l.form.edges().last().expect("child has an edge");
    let mut inverse = vec![0; l.position.len()];
    for (v, &p) in l.position.iter().enumerate() {
        inverse[p] = v;
    }
    let (x, y) = (inverse[a], inverse[b]);
    (x.min(y), x.max(y))
}

fn children<P: Fn(&Graph) -> bool>(node: &Node, max_edges: usize, keep: &P) -> Vec<Node> {
    let g = &node.graph;
    if g.edge_count() >= max_edges {
        return Vec::new();
    }
    let n = g.n();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for u in 0..n {
        for v in Bits(!g.row(u) & g.vertex_mask() & !low_bits(u + 1)) {
            let mut child = g.clone();
            child.add_edge(u, v);
            if !keep(&child) {
                continue;
            }
            let l = labelling_unchecked(&child);
            let (a, b) = deletion_edge(&l);
            if (a, b) != (u, v) {
                let pair = |x: usize, y: usize| {
                    let (dx, dy) = (child.deg(x), child.deg(y));
                    (dx.min(dy), dx.max(dy))
                };
                if pair(a, b) != pair(u, v) {
                    continue;
                }
                let mut parent = child.clone();
                parent.remove_edge(a, b);
                if labelling_unchecked(&parent).code() != node.code {
                    continue;
                }
            }
            let code = l.code();
            if seen.insert(code.clone()) {
                out.push(Node { graph: child, code });
            }
        }
    }
    out
}

/// Depth-first walk below `node` (excluding it); false when the budget ran out.
fn walk<P: Fn(&Graph) -> bool>(
    node: &Node,
    max_edges: usize,
    keep: &P,
    meter: &Meter,
    out: &mut Vec<Node>,
) -> bool {
    for child in children(node, max_edges, keep) {
        if !meter.charge(1) {
            return false;
        }
        let ok = walk(&child, max_edges, keep, meter, out);
        out.push(child);
        if !ok {
            return false;
        }
    }
    true
}

/// Every class of graphs on `n` vertices with at most `max_edges` edges that
/// `keep` accepts. `keep` must be inherited by subgraphs. The tree is cut at
/// depth two and the subtrees are walked in parallel on the current pool.
fn enumerate_classes<P: Fn(&Graph) -> bool + Sync>(
    n: usize,
    max_edges: usize,
    keep: &P,
    meter: &Meter,
    workers: usize,
) -> (BTreeMap<CanonicalCode, Graph>, bool) {
    let root = Node::root(n);
    let mut shallow = Vec::new();
    let mut shards = Vec::new();
    let mut complete = true;
    for child in children(&root, max_edges, keep) {
        complete &= meter.charge(1);
        shards.extend(children(&child, max_edges, keep));
        shallow.push(child);
    }
    complete &= meter.charge(shards.len() as u64);
    let walked: Vec<(Vec<Node>, bool)> = if workers <= 1 {
        shards
            .iter()
            .map(|s| {
                let mut out = Vec::new();
                let ok = complete && walk(s, max_edges, keep, meter, &mut out);
                (out, ok)
            })
            .collect()
    } else {
        shards
            .par_iter()
            .map(|s| {
                let mut out = Vec::new();
                let ok = complete && walk(s, max_edges, keep, meter, &mut out);
                (out, ok)
            })
            .collect()
    };
    let mut classes = BTreeMap::new();
    for node in std::iter::once(root).chain(shallow).chain(shards) {
        classes.insert(node.code, node.graph);
    }
    for (nodes, ok) in walked {
        complete &= ok;
        for node in nodes {
            classes.insert(node.code, node.graph);
        }
    }
    (classes, complete && !meter.is_exhausted())
}

// ---------------------------------------------------------------------------
// closure-restricted search

struct Closure {
    n: usize,
    /// Required degree sum on every complement edge.
    target: usize,
    /// Smallest degree of a high vertex.
    high: usize,
    max_edges: usize,
}

impl Closure {
    /// Edge budget check on the graph of high vertices: each missing unit of
    /// degree costs at least half an edge.
    fn keep_high_graph(&self, q: &Graph) -> bool {
        let deficit: usize = q
            .degrees()
            .iter()
            .map(|&d| self.high.saturating_sub(d))
            .sum();
        q.edge_count() + deficit.div_ceil(2) <= self.max_edges
    }
}

fn closure_classes(
    n: usize,
    k: usize,
    max_edges: usize,
    meter: &Meter,
    workers: usize,
) -> (BTreeMap<CanonicalCode, Graph>, bool) {
    let target = n + k - 2;
    let high = target.div_ceil(2);
    let rules = Closure {
        n,
        target,
        high,
        max_edges,
    };
    let max_high = if high > n - 1 {
        0
    } else {
        n.min(2 * max_edges / high)
    };

    let mut complete = true;
    let mut high_graphs: Vec<Graph> = vec![Graph::empty(0).expect("empty graph")];
    for h in 1..=max_high {
        let (qs, ok) = enumerate_classes(
            h,
            max_edges,
            &|q: &Graph| rules.keep_high_graph(q),
            meter,
            workers,
        );
        complete &= ok;
        high_graphs.extend(qs.into_values());
    }

    let run = |q: &Graph| {
        let mut search = LowSearch::new(&rules, q, meter);
        search.run();
        (search.found, search.exhausted)
    };
    let results: Vec<(BTreeMap<CanonicalCode, Graph>, bool)> = if workers <= 1 {
        high_graphs.iter().map(run).collect()
    } else {
        high_graphs.par_iter().map(run).collect()
    };
    let mut classes = BTreeMap::new();
    for (found, exhausted) in results {
        complete &= !exhausted;
        classes.extend(found);
    }
    (classes, complete && !meter.is_exhausted())
}

/// Chooses the neighbourhoods of the low vertices as a non-increasing
/// sequence of subsets of the high vertices.
struct LowSearch<'a> {
    rules: &'a Closure,
    q: &'a Graph,
    meter: &'a Meter,
    lows: usize,
    degree: Vec<usize>,
    chosen: Vec<u64>,
    edges: usize,
    found: BTreeMap<CanonicalCode, Graph>,
    exhausted: bool,
}

impl<'a> LowSearch<'a> {
    fn new(rules: &'a Closure, q: &'a Graph, meter: &'a Meter) -> Self {
        LowSearch {
            rules,
            q,
            meter,
            lows: rules.n - q.n(),
            degree: q.degrees(),
            chosen: Vec::new(),
            edges: q.edge_count(),
            found: BTreeMap::new(),
            exhausted: false,
        }
    }

    fn run(&mut self) {
        if self.rules.keep_high_graph(self.q) {
            self.extend(low_bits(self.q.n()));
        }
    }

    fn extend(&mut self, previous: u64) {
        if self.exhausted || !self.meter.charge(1) {
            self.exhausted = true;
            return;
        }
        let rules = self.rules;
        let remaining = self.lows - self.chosen.len();
        let mut deficit = 0;
        for &d in &self.degree {
            let short = rules.high.saturating_sub(d);
            if short > remaining {
                return;
            }
            deficit += short;
        }
        if self.edges + deficit > rules.max_edges {
            return;
        }
        if remaining == 0 {
            self.finish();
            return;
        }
        let mut s = previous;
        loop {
            let size = s.count_ones() as usize;
            // the low vertex's neighbours must reach degree T - size; each can
            // still gain one edge per remaining low vertex
            let feasible = size < rules.high
                && self.edges + size <= rules.max_edges
                && Bits(s).all(|v| self.degree[v] + remaining + size >= rules.target);
            if feasible {
                for v in Bits(s) {
                    self.degree[v] += 1;
                }
                self.chosen.push(s);
                self.edges += size;
                self.extend(s);
                self.edges -= size;
                self.chosen.pop();
                for v in Bits(s) {
                    self.degree[v] -= 1;
                }
                if self.exhausted {
                    return;
                }
            }
            if s == 0 {
                break;
            }
            s -= 1;
        }
    }

    fn finish(&mut self) {
        let rules = self.rules;
        for &s in &self.chosen {
            let need = rules.target - s.count_ones() as usize;
            if Bits(s).any(|v| self.degree[v] < need) {
                return;
            }
        }
        let h = self.q.n();
        let mut rows: Vec<u64> = self.q.rows().to_vec();
        rows.resize(rules.n, 0);
        for (j, &s) in self.chosen.iter().enumerate() {
            rows[h + j] = s;
            for v in Bits(s) {
                rows[v] |= 1u64 << (h + j);
            }
        }
        let c = Graph::from_rows(rows).expect("rows are symmetric");
        debug_assert!(c
            .edges()
            .iter()
            .all(|&(u, v)| c.deg(u) + c.deg(v) >= rules.target));
        let code = labelling_unchecked(&c).code();
        self.found.entry(code).or_insert(c);
    }
}
