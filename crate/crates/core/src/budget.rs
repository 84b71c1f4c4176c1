//! Node and wall-clock limits for exhaustive searches.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

/// Nodes between wall-clock checks.
pub const CLOCK_CHECK_INTERVAL: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: Some(100_000_000),
            max_time: Some(Duration::from_secs(60)),
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_nodes: None,
            max_time: None,
        }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes: Some(max_nodes),
            max_time: None,
        }
    }
}

/// Shared node counter enforcing a [`Budget`]. Safe to use from several workers.
#[derive(Debug)]
pub struct Meter {
    budget: Budget,
    start: Instant,
    nodes: AtomicU64,
    exhausted: AtomicBool,
}

impl Meter {
    pub fn new(budget: Budget) -> Self {
        Meter {
            budget,
            start: Instant::now(),
            nodes: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        }
    }

    /// Counts `count` more nodes; returns `false` once the budget is spent.
    #[inline]
    pub fn charge(&self, count: u64) -> bool {
        if self.exhausted.load(Ordering::Relaxed) {
            return false;
        }
        let before = self.nodes.fetch_add(count, Ordering::Relaxed);
        let after = before + count;
        if let Some(max) = self.budget.max_nodes {
            if after > max {
                self.exhausted.store(true, Ordering::Relaxed);
                return false;
            }
        }
        if before / CLOCK_CHECK_INTERVAL != after / CLOCK_CHECK_INTERVAL {
            if let Some(limit) = self.budget.max_time {
                if self.start.elapsed() > limit {
                    self.exhausted.store(true, Ordering::Relaxed);
                    return false;
                }
            }
        }
        true
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }
}
