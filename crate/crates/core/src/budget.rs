//! Node and wall-clock limits shared by the exhaustive searches.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Limits for a search. `None` means unlimited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
    /// Worker threads; results never depend on this.
    pub workers: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: None,
            max_time: None,
            workers: 1,
        }
    }
}

impl SearchBudget {
    pub fn new(max_nodes: Option<u64>, max_time: Option<Duration>, workers: usize) -> Result<Self> {
        if max_nodes == Some(0) {
            return Err(invalid("node budget must be positive"));
        }
        if max_time.is_some_and(|t| t.is_zero()) {
            return Err(invalid("time budget must be positive"));
        }
        if workers == 0 {
            return Err(invalid("worker count must be positive"));
        }
        Ok(SearchBudget {
            max_nodes,
            max_time,
            workers,
        })
    }

    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_max_nodes(mut self, nodes: u64) -> Self {
        self.max_nodes = Some(nodes.max(1));
        self
    }
}

/// Counters reported with search results. Not part of any determinism
/// guarantee: node counts vary with the worker count.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub prunes: u64,
    pub elapsed_ms: u64,
}

/// Thread-safe budget accounting.
pub(crate) struct Meter {
    nodes: AtomicU64,
    prunes: AtomicU64,
    stopped: AtomicBool,
    start: Instant,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
}

impl Meter {
    pub(crate) fn new(budget: &SearchBudget) -> Self {
        let start = Instant::now();
        Meter {
            nodes: AtomicU64::new(0),
            prunes: AtomicU64::new(0),
            stopped: AtomicBool::new(false),
            start,
            max_nodes: budget.max_nodes,
            deadline: budget.max_time.map(|t| start + t),
        }
    }

    /// Counts a node; false once the budget is gone.
    pub(crate) fn tick(&self) -> bool {
        if self.stopped.load(Ordering::Relaxed) {
            return false;
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_nodes = self.max_nodes.is_some_and(|m| n > m);
        let over_time = n.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.stopped.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    pub(crate) fn prune(&self) {
        self.prunes.fetch_add(1, Ordering::Relaxed);
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.stopped.load(Ordering::Relaxed)
    }

    pub(crate) fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes.load(Ordering::Relaxed),
            prunes: self.prunes.load(Ordering::Relaxed),
            elapsed_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}

/// Runs `f` on a dedicated pool with `workers` threads.
pub(crate) fn in_pool<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}
