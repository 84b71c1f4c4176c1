//! Closed-form bounds on the Turán number of spanning linear forests, and
//! the instance checks and sweeps built on the exact search.
//!
//! For `k >= 2` and `n >= 3k`:
//!
//! ```text
//! C(n-k+1, 2) <= ex(n; L(n,k)) <= C(n-k+1, 2) + (k^2 - 3k + 4) / 2
//! ```
//!
//! The lower bound holds for every `1 <= k <= n` (a clique on `n - k + 1`
//! vertices plus `k - 1` isolated vertices avoids the family). The upper bound
//! is only proved in the stated range, so [`upper_bound`] refuses anything else.

use std::fmt::Write as _;

use serde::Serialize;

use crate::budget::Budget;
use crate::canon::canonical_code;
use crate::error::{BoundsError, SearchError};
use crate::extremal::{ex_exact, ExtremalResult, SearchSpec};
use crate::graph::Graph;

/// `C(n, r)` by the multiplicative formula, failing on overflow.
pub fn binomial(n: u64, r: u64) -> Result<u64, BoundsError> {
    if r > n {
        return Ok(0);
    }
    let r = r.min(n - r);
    let mut acc: u64 = 1;
    for i in 0..r {
        // acc * (n - i) is divisible by i + 1 after the multiplication
        acc = acc.checked_mul(n - i).ok_or(BoundsError::Overflow)? / (i + 1);
    }
    Ok(acc)
}

fn check_family(n: usize, k: usize) -> Result<(), BoundsError> {
    if k == 0 {
        return Err(BoundsError::Domain {
            n,
            k,
            reason: "k must be at least 1",
        });
    }
    if n < k {
        return Err(BoundsError::Domain {
            n,
            k,
            reason: "n must be at least k",
        });
    }
    Ok(())
}

/// Edges of the clique-plus-isolated construction: `C(n - k + 1, 2)`.
pub fn lower_bound(n: usize, k: usize) -> Result<u64, BoundsError> {
    check_family(n, k)?;
    binomial((n - k + 1) as u64, 2)
}

/// `(k^2 - 3k + 4) / 2`; `k(k - 3)` is always even so this is exact.
pub fn bound_gap(k: usize) -> Result<u64, BoundsError> {
    let k = k as u64;
    let square = k.checked_mul(k).ok_or(BoundsError::Overflow)?;
    Ok((square + 4 - 3 * k) / 2)
}

/// Whether the upper bound is proved for `(n, k)`.
pub fn theorem_applies(n: usize, k: usize) -> bool {
    k >= 2 && n >= 3 * k
}

pub fn upper_bound(n: usize, k: usize) -> Result<u64, BoundsError> {
    if k < 2 {
        return Err(BoundsError::Domain {
            n,
            k,
            reason: "the upper bound needs k >= 2",
        });
    }
    if n < 3 * k {
        return Err(BoundsError::Domain {
            n,
            k,
            reason: "the upper bound needs n >= 3k",
        });
    }
    lower_bound(n, k)?
        .checked_add(bound_gap(k)?)
        .ok_or(BoundsError::Overflow)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundPair {
    pub n: usize,
    pub k: usize,
    pub lower: u64,
    /// `None` outside `n >= 3k, k >= 2`.
    pub upper: Option<u64>,
    pub applicable: bool,
}

impl BoundPair {
    pub fn new(n: usize, k: usize) -> Result<Self, BoundsError> {
        let applicable = theorem_applies(n, k);
        Ok(BoundPair {
            n,
            k,
            lower: lower_bound(n, k)?,
            upper: if applicable {
                Some(upper_bound(n, k)?)
            } else {
                None
            },
            applicable,
        })
    }

    pub fn contains(&self, value: u64) -> bool {
        self.lower <= value && self.upper.is_none_or(|u| value <= u)
    }
}

/// `K_(n-k+1)` on vertices `0..=n-k` plus `k - 1` isolated vertices.
pub fn clique_plus_isolated(n: usize, k: usize) -> Result<Graph, BoundsError> {
    check_family(n, k)?;
    let too_big = |_| BoundsError::Domain {
        n,
        k,
        reason: "graphs are limited to 64 vertices",
    };
    Graph::complete(n - k + 1)
        .map_err(too_big)?
        .disjoint_union(&Graph::empty(k - 1).map_err(too_big)?)
        .map_err(too_big)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The search ran out of budget; nothing was checked.
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub verdict: Verdict,
    pub bounds: BoundPair,
    /// Failed checks, in plain words.
    pub failures: Vec<String>,
    pub result: ExtremalResult,
}

/// Runs the exact search for `(n, k)` and checks it against the bounds and
/// the construction.
pub fn verify_instance(
    n: usize,
    k: usize,
    budget: Budget,
    workers: usize,
) -> Result<Verification, SearchError> {
    verify_spec(
        &SearchSpec::new(n, k)?
            .with_budget(budget)
            .with_workers(workers),
    )
}

/// [`verify_instance`] for an explicit search configuration.
pub fn verify_spec(spec: &SearchSpec) -> Result<Verification, SearchError> {
    let (n, k) = (spec.n, spec.k);
    let bounds = BoundPair::new(n, k)?;
    let result = ex_exact(spec)?;
    let Some(exact) = result.exact_value else {
        return Ok(Verification {
            verdict: Verdict::Inconclusive,
            bounds,
            failures: Vec::new(),
            result,
        });
    };
    let exact = exact as u64;
    let mut failures = Vec::new();
    if exact < bounds.lower {
        failures.push(format!(
            "exact value {exact} is below the lower bound {}",
            bounds.lower
        ));
    }
    if let Some(upper) = bounds.upper {
        if exact > upper {
            failures.push(format!(
                "exact value {exact} exceeds the upper bound {upper}"
            ));
        }
    }
    let construction = canonical_code(&clique_plus_isolated(n, k)?)?;
    let listed = result.witnesses.contains(&construction);
    if listed != (exact == bounds.lower) {
        failures.push(format!(
            "clique-plus-isolated construction {} the witnesses but exact {} lower bound",
            if listed {
                "is among"
            } else {
                "is missing from"
            },
            if exact == bounds.lower {
                "equals the"
            } else {
                "differs from the"
            },
        ));
    }
    Ok(Verification {
        verdict: if failures.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        bounds,
        failures,
        result,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    Exact,
    /// Budget exhausted; only an interval is known.
    Partial,
    /// `k < 2` or `k > n`: nothing to search.
    Invalid,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepCell {
    pub n: usize,
    pub k: usize,
    pub status: CellStatus,
    pub lower: Option<u64>,
    pub upper: Option<u64>,
    pub theorem_applies: bool,
    pub exact: Option<u64>,
    /// Known interval for the Turán number; equal ends when exact.
    pub interval: Option<(u64, Option<u64>)>,
    pub gap_to_lower: Option<u64>,
    pub classes_enumerated: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub schema: u32,
    pub cells: Vec<SweepCell>,
    /// Largest `K` such that every exact cell with `2 <= k <= K` inside the
    /// theorem's range has gap 0, and each such `k` has at least one exact
    /// cell. `None` if even `k = 2` has no exact cell.
    pub k0_evidence: Option<usize>,
}

/// Exact search over every `(n, k)` in the grid, in `(n, k)` order.
pub fn sweep(
    n_range: impl IntoIterator<Item = usize>,
    k_range: impl IntoIterator<Item = usize> + Clone,
    budget: Budget,
    workers: usize,
) -> Result<SweepReport, SearchError> {
    let mut cells = Vec::new();
    for n in n_range {
        for k in k_range.clone() {
            cells.push(sweep_cell(n, k, budget, workers)?);
        }
    }
    let k0_evidence = k0_evidence(&cells);
    Ok(SweepReport {
        schema: 1,
        cells,
        k0_evidence,
    })
}

fn sweep_cell(
    n: usize,
    k: usize,
    budget: Budget,
    workers: usize,
) -> Result<SweepCell, SearchError> {
    if k < 2 || k > n {
        return Ok(SweepCell {
            n,
            k,
            status: CellStatus::Invalid,
            lower: None,
            upper: None,
            theorem_applies: false,
            exact: None,
            interval: None,
            gap_to_lower: None,
            classes_enumerated: 0,
        });
    }
    let bounds = BoundPair::new(n, k)?;
    let spec = SearchSpec::new(n, k)?
        .with_budget(budget)
        .with_workers(workers);
    let result = ex_exact(&spec)?;
    let exact = result.exact_value.map(|v| v as u64);
    let interval = match exact {
        Some(v) => (v, Some(v)),
        None => {
            let found = result
                .best_found
                .map_or(bounds.lower, |b| (b as u64).max(bounds.lower));
            (found, bounds.upper)
        }
    };
    Ok(SweepCell {
        n,
        k,
        status: if exact.is_some() {
            CellStatus::Exact
        } else {
            CellStatus::Partial
        },
        lower: Some(bounds.lower),
        upper: bounds.upper,
        theorem_applies: bounds.applicable,
        exact,
        interval: Some(interval),
        gap_to_lower: exact.map(|v| v - bounds.lower),
        classes_enumerated: result.enumerated,
    })
}

fn k0_evidence(cells: &[SweepCell]) -> Option<usize> {
    let mut best = None;
    let max_k = cells.iter().map(|c| c.k).max()?;
    for k in 2..=max_k {
        let tested: Vec<&SweepCell> = cells
            .iter()
            .filter(|c| c.k == k && c.theorem_applies && c.status == CellStatus::Exact)
            .collect();
        if tested.is_empty() || tested.iter().any(|c| c.gap_to_lower != Some(0)) {
            break;
        }
        best = Some(k);
    }
    best
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,status,lower,upper,theorem_applies,exact,interval_low,interval_high,gap_to_lower,classes_enumerated\n");
        let opt = |v: Option<u64>| v.map_or(String::new(), |x| x.to_string());
        for c in &self.cells {
            let (lo, hi) = c.interval.map_or((None, None), |(a, b)| (Some(a), b));
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                c.n,
                c.k,
                status_label(c.status),
                opt(c.lower),
                opt(c.upper),
                c.theorem_applies,
                opt(c.exact),
                opt(lo),
                opt(hi),
                opt(c.gap_to_lower),
                c.classes_enumerated
            );
        }
        out
    }

    /// Aligned columns; cells outside the theorem's range say so.
    pub fn to_table(&self) -> String {
        let header = ["n", "k", "lower", "upper", "exact", "gap", "note"];
        let mut rows: Vec<[String; 7]> = Vec::new();
        for c in &self.cells {
            let opt = |v: Option<u64>| v.map_or("-".to_string(), |x| x.to_string());
            let exact = match (c.exact, c.interval) {
                (Some(v), _) => v.to_string(),
                (None, Some((lo, Some(hi)))) => format!("[{lo},{hi}]"),
                (None, Some((lo, None))) => format!(">={lo}"),
                (None, None) => "-".to_string(),
            };
            let note = match c.status {
                CellStatus::Invalid => "invalid parameters",
                CellStatus::Partial => "budget exhausted",
                CellStatus::Exact if !c.theorem_applies => "theorem N/A",
                CellStatus::Exact => "",
            };
            rows.push([
                c.n.to_string(),
                c.k.to_string(),
                opt(c.lower),
                opt(c.upper),
                exact,
                opt(c.gap_to_lower),
                note.to_string(),
            ]);
        }
        let mut widths = header.map(str::len);
        for r in &rows {
            for (w, cell) in widths.iter_mut().zip(r) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let mut line = |cells: Vec<&str>| {
            let mut text = String::new();
            for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
                if i + 1 == cells.len() {
                    text.push_str(cell);
                } else {
                    let _ = write!(text, "{cell:>w$}  ");
                }
            }
            out.push_str(text.trim_end());
            out.push('\n');
        };
        line(header.to_vec());
        for r in &rows {
            line(r.iter().map(String::as_str).collect());
        }
        let _ = match self.k0_evidence {
            Some(k) => writeln!(
                out,
                "k0 evidence: gap 0 for every exact cell with 2 <= k <= {k}"
            ),
            None => writeln!(out, "k0 evidence: none"),
        };
        out
    }
}

fn status_label(s: CellStatus) -> &'static str {
    match s {
        CellStatus::Exact => "exact",
        CellStatus::Partial => "partial",
        CellStatus::Invalid => "invalid",
    }
}
