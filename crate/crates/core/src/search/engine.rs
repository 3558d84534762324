//! Position-by-position backtracking over vertex orders.
//!
//! An [`OrderProblem`] has `len` positions, each with a set of allowed
//! vertices, and a list of windows (sets of positions) whose images must be
//! edges of a host graph. Positions are filled in increasing order with
//! distinct vertices. When a position is filled, every window through it
//! that already holds vertices restricts the candidates to vertices `v` such
//! that some edge contains the window's filled part plus `v` and has its
//! remaining vertices among the unused vertices still allowed in that
//! window. That single rule gives both frontier pruning and the final
//! membership check of completed windows.

use crate::error::{invalid, Result};
use crate::graph::KGraph;
use crate::search::{Meter, SearchBudget, SearchOutcome};
use crate::vset::VSet;

pub struct OrderProblem<'a> {
    graph: &'a KGraph,
    len: usize,
    windows: Vec<Vec<usize>>,
    allowed: Vec<VSet>,
    at: Vec<Vec<(usize, usize)>>,
    future: Vec<Vec<VSet>>,
    pool: VSet,
}

enum Flow {
    Continue,
    Stop,
    Abort,
}

impl<'a> OrderProblem<'a> {
    /// `windows` are position lists of size `graph.k()`; `allowed[p]` is the
    /// set of vertices that may sit at position `p`.
    pub fn new(graph: &'a KGraph, windows: Vec<Vec<usize>>, allowed: Vec<VSet>) -> Result<OrderProblem<'a>> {
        let len = allowed.len();
        let mut at = vec![Vec::new(); len];
        let mut future = Vec::with_capacity(windows.len());
        let mut sorted = Vec::with_capacity(windows.len());
        for (w, win) in windows.into_iter().enumerate() {
            let mut pos = win;
            pos.sort_unstable();
            pos.dedup();
            if pos.len() != graph.k() {
                return invalid(format!(
                    "window {w} has {} distinct positions, host is {}-uniform",
                    pos.len(),
                    graph.k()
                ));
            }
            if pos.iter().any(|&p| p >= len) {
                return invalid(format!("window {w} refers to a position >= {len}"));
            }
            let mut fut = vec![VSet::EMPTY; pos.len() + 1];
            for i in (0..pos.len()).rev() {
                fut[i] = fut[i + 1] | allowed[pos[i]];
            }
            for (i, &p) in pos.iter().enumerate() {
                at[p].push((w, i));
            }
            future.push(fut);
            sorted.push(pos);
        }
        let pool = allowed.iter().fold(VSet::EMPTY, |a, &s| a | s);
        if !pool.fits(graph.n()) {
            return invalid("allowed vertices outside the host");
        }
        Ok(OrderProblem {
            graph,
            len,
            windows: sorted,
            allowed,
            at,
            future,
            pool,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn candidates(&self, order: &[usize], used: VSet) -> VSet {
        let p = order.len();
        let mut cand = self.allowed[p] - used;
        for &(w, i) in &self.at[p] {
            if cand.is_empty() {
                break;
            }
            if i == 0 {
                if self.graph.k() == 1 {
                    let loops = self.graph.edges().iter().fold(0u64, |a, &e| a | e);
                    cand = cand & VSet(loops);
                }
                continue;
            }
            let pos = &self.windows[w];
            let filled = VSet::from_vertices(pos[..i].iter().map(|&q| order[q]));
            let fut = (self.future[w][i] - used).mask();
            let pivot = order[pos[i - 1]];
            let mut ext = 0u64;
            for &e in self.graph.incident(pivot) {
                if e & filled.mask() == filled.mask() {
                    let rest = e & !filled.mask();
                    if rest & !fut == 0 {
                        ext |= rest;
                    }
                }
            }
            cand = cand & VSet(ext);
        }
        cand
    }

    /// Every vertex still to be placed must lie in an edge made of unplaced
    /// vertices and vertices of windows that are not yet complete.
    fn strong_ok(&self, order: &[usize], used: VSet) -> bool {
        let p = order.len();
        let rest = self.pool - used;
        let mut open = VSet::EMPTY;
        for pos in &self.windows {
            if pos[0] < p && *pos.last().unwrap() >= p {
                for &q in pos.iter().take_while(|&&q| q < p) {
                    open.insert(order[q]);
                }
            }
        }
        let room = (rest | open).mask();
        rest.iter()
            .all(|v| self.graph.incident(v).iter().any(|&e| e & !room == 0))
    }

    fn dfs(
        &self,
        order: &mut Vec<usize>,
        used: VSet,
        strong: bool,
        meter: &mut Meter,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Flow {
        if order.len() == self.len {
            return if visit(order) { Flow::Stop } else { Flow::Continue };
        }
        if !meter.tick() {
            return Flow::Abort;
        }
        if strong && !order.is_empty() && !self.strong_ok(order, used) {
            return Flow::Continue;
        }
        for v in self.candidates(order, used) {
            order.push(v);
            let flow = self.dfs(order, used.with(v), strong, meter, visit);
            order.pop();
            match flow {
                Flow::Continue => {}
                other => return other,
            }
        }
        Flow::Continue
    }

    fn strong(&self, budget: &SearchBudget) -> bool {
        budget.strong_pruning && self.pool.len() == self.len
    }

    /// Call `visit` on every solution in lexicographic order of vertex
    /// sequences until it returns true. `Found(())` means the visitor stopped
    /// the search, `NotFound` that all solutions were visited.
    pub fn for_each_solution(
        &self,
        budget: &SearchBudget,
        mut visit: impl FnMut(&[usize]) -> bool,
    ) -> SearchOutcome<()> {
        let mut meter = Meter::new(budget);
        let mut order = Vec::with_capacity(self.len);
        match self.dfs(&mut order, VSet::EMPTY, self.strong(budget), &mut meter, &mut visit) {
            Flow::Stop => SearchOutcome::Found(()),
            Flow::Continue => SearchOutcome::NotFound,
            Flow::Abort => SearchOutcome::Exhausted,
        }
    }

    /// First solution, searching subtrees of the first position in parallel
    /// when the budget asks for it.
    pub fn solve(&self, budget: &SearchBudget) -> SearchOutcome<Vec<usize>> {
        #[cfg(feature = "parallel")]
        if budget.parallel && self.len > 1 {
            return self.solve_parallel(budget);
        }
        let mut found = None;
        let out = self.for_each_solution(budget, |o| {
            found = Some(o.to_vec());
            true
        });
        out.map(|_| found.expect("visitor stored the solution"))
    }

    #[cfg(feature = "parallel")]
    fn solve_parallel(&self, budget: &SearchBudget) -> SearchOutcome<Vec<usize>> {
        use rayon::prelude::*;
        use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

        let deadline = budget.time_limit.map(|d| std::time::Instant::now() + d);
        let nodes = AtomicU64::new(0);
        let cancel = AtomicBool::new(false);
        let exhausted = AtomicBool::new(false);
        let strong = self.strong(budget);
        let firsts: Vec<usize> = self.candidates(&[], VSet::EMPTY).to_vec();
        let hit = firsts.par_iter().find_map_any(|&v| {
            let mut meter = Meter::shared(budget, deadline, &nodes, &cancel);
            let mut order = vec![v];
            let mut found = None;
            let mut visit = |o: &[usize]| {
                found = Some(o.to_vec());
                true
            };
            let flow = self.dfs(&mut order, VSet::singleton(v), strong, &mut meter, &mut visit);
            match flow {
                Flow::Stop => {
                    cancel.store(true, Ordering::Relaxed);
                    found
                }
                Flow::Abort => {
                    if meter.is_exhausted() {
                        exhausted.store(true, Ordering::Relaxed);
                    }
                    None
                }
                Flow::Continue => None,
            }
        });
        match hit {
            Some(o) => SearchOutcome::Found(o),
            None if exhausted.load(Ordering::Relaxed) => SearchOutcome::Exhausted,
            None => SearchOutcome::NotFound,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_tight_paths_of_a_triangle_fan() {
        // 2-graph path 0-1-2-3 as windows of size 2 along 4 positions
        let g = KGraph::from_vertex_lists(4, 2, &[vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let windows = vec![vec![0, 1], vec![1, 2], vec![2, 3]];
        let p = OrderProblem::new(&g, windows, vec![VSet::full(4); 4]).unwrap();
        let mut seen = Vec::new();
        let out = p.for_each_solution(&SearchBudget::unlimited(), |o| {
            seen.push(o.to_vec());
            false
        });
        assert!(out.is_not_found());
        assert_eq!(seen, vec![vec![0, 1, 2, 3], vec![3, 2, 1, 0]]);
    }

    #[test]
    fn budget_exhaustion_is_not_a_refutation() {
        let g = KGraph::complete(8, 2).unwrap();
        let windows = (0..7).map(|i| vec![i, i + 1]).collect();
        let p = OrderProblem::new(&g, windows, vec![VSet::full(8); 8]).unwrap();
        assert!(p.solve(&SearchBudget::nodes(3)).is_exhausted());
        assert!(p.solve(&SearchBudget::unlimited()).is_found());
    }

    #[test]
    fn rejects_bad_windows() {
        let g = KGraph::complete(4, 2).unwrap();
        assert!(OrderProblem::new(&g, vec![vec![0, 1, 2]], vec![VSet::full(4); 3]).is_err());
        assert!(OrderProblem::new(&g, vec![vec![0, 5]], vec![VSet::full(4); 3]).is_err());
    }
}
