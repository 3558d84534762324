//! Exact searches used as ground truth: Hamilton ℓ-cycles and ℓ-paths,
//! maximum `Y_{k,b}`-tilings, maximum `Y_{k,b}`-free graphs and bipartite
//! matchings.
//!
//! Every search takes a [`SearchBudget`] and answers with a three-valued
//! [`SearchOutcome`]: `NotFound` is only reported after the search tree has
//! been exhausted, never when the budget ran out.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Duration;

mod engine;
mod hamilton;
mod matching;
mod yfree;
mod ytiling;

pub use engine::OrderProblem;
pub(crate) use hamilton::path_windows;
pub use hamilton::{find_hamilton_ell_cycle, find_hamilton_ell_path};
pub use matching::{extend_matching, max_bipartite_matching, Matching};
pub use yfree::{max_y_free_edges, max_y_free_graph};
pub use ytiling::{all_y_copies, max_y_tiling};

/// Limits and switches for one exact search.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SearchBudget {
    /// Maximum number of search-tree nodes.
    pub node_limit: Option<u64>,
    /// Wall-clock limit.
    pub time_limit: Option<Duration>,
    /// Split the first branching level across worker threads.
    pub parallel: bool,
    /// Also require every unused vertex to lie in an edge that can still be
    /// completed.
    pub strong_pruning: bool,
}

impl SearchBudget {
    pub fn unlimited() -> SearchBudget {
        SearchBudget::default()
    }

    pub fn nodes(limit: u64) -> SearchBudget {
        SearchBudget {
            node_limit: Some(limit),
            ..SearchBudget::default()
        }
    }

    pub fn with_time_limit(mut self, secs: f64) -> SearchBudget {
        self.time_limit = Some(Duration::from_secs_f64(secs));
        self
    }

    pub fn with_parallel(mut self, on: bool) -> SearchBudget {
        self.parallel = on;
        self
    }

    pub fn with_strong_pruning(mut self, on: bool) -> SearchBudget {
        self.strong_pruning = on;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    NotFound,
    Exhausted,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_not_found(&self) -> bool {
        matches!(self, SearchOutcome::NotFound)
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self, SearchOutcome::Exhausted)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchOutcome<U> {
        match self {
            SearchOutcome::Found(t) => SearchOutcome::Found(f(t)),
            SearchOutcome::NotFound => SearchOutcome::NotFound,
            SearchOutcome::Exhausted => SearchOutcome::Exhausted,
        }
    }

    /// Short tag used in reports: `found`, `not-found` or `exhausted`.
    pub fn tag(&self) -> &'static str {
        match self {
            SearchOutcome::Found(_) => "found",
            SearchOutcome::NotFound => "not-found",
            SearchOutcome::Exhausted => "exhausted",
        }
    }
}

/// Node and time accounting for a search. Clock reads happen only when a
/// time limit is set.
pub struct Meter<'a> {
    limit: Option<u64>,
    deadline: Option<std::time::Instant>,
    local: u64,
    shared: Option<&'a AtomicU64>,
    cancel: Option<&'a AtomicBool>,
    exhausted: bool,
}

impl<'a> Meter<'a> {
    pub fn new(budget: &SearchBudget) -> Meter<'a> {
        Meter {
            limit: budget.node_limit,
            deadline: budget.time_limit.map(|d| std::time::Instant::now() + d),
            local: 0,
            shared: None,
            cancel: None,
            exhausted: false,
        }
    }

    #[cfg_attr(not(feature = "parallel"), allow(dead_code))]
    /// A meter whose node count is pooled with other workers and which stops
    /// as soon as `cancel` is raised.
    pub(crate) fn shared(
        budget: &SearchBudget,
        deadline: Option<std::time::Instant>,
        nodes: &'a AtomicU64,
        cancel: &'a AtomicBool,
    ) -> Meter<'a> {
        Meter {
            limit: budget.node_limit,
            deadline,
            local: 0,
            shared: Some(nodes),
            cancel: Some(cancel),
            exhausted: false,
        }
    }

    /// Count one node; false once the budget is spent or the search has been
    /// cancelled.
    pub fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.local += 1;
        let total = match self.shared {
            Some(s) => s.fetch_add(1, Ordering::Relaxed) + 1,
            None => self.local,
        };
        if self.limit.is_some_and(|l| total > l) {
            self.exhausted = true;
            return false;
        }
        if let Some(d) = self.deadline {
            if self.local.is_multiple_of(512) && std::time::Instant::now() > d {
                self.exhausted = true;
                return false;
            }
        }
        if self.cancel.is_some_and(|c| c.load(Ordering::Relaxed)) {
            return false;
        }
        true
    }

    pub fn nodes(&self) -> u64 {
        self.local
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }
}
