//! Largest `Y_{k,b}`-free k-graph on `n` vertices, by exhaustive search.
//!
//! A graph is `Y_{k,b}`-free when no two of its edges share exactly `b`
//! vertices, so the answer is a maximum independent set in the conflict
//! graph on all `C(n,k)` k-sets. The symmetric group acts transitively on
//! k-sets, so the first k-set can be assumed to be in the optimum.

use crate::error::{invalid, Result};
use crate::graph::KGraph;
use crate::search::{Meter, SearchBudget, SearchOutcome};
use crate::vset::{binom, VSet};

/// Largest number of k-sets handled.
pub const MAX_Y_FREE_KSETS: u64 = 24;

struct Mis<'m> {
    nbr: Vec<u32>,
    best: u32,
    meter: Meter<'m>,
}

impl Mis<'_> {
    fn rec(&mut self, cand: u32, cur: u32) -> bool {
        if !self.meter.tick() {
            return false;
        }
        if cur.count_ones() + cand.count_ones() <= self.best.count_ones() {
            return true;
        }
        if cand == 0 {
            self.best = cur;
            return true;
        }
        let v = cand.trailing_zeros();
        let bit = 1u32 << v;
        self.rec(cand & !self.nbr[v as usize] & !bit, cur | bit) && self.rec(cand & !bit, cur)
    }
}

/// Maximum `Y_{k,b}`-free graph on `n` vertices; `Exhausted` when
/// `C(n,k)` exceeds [`MAX_Y_FREE_KSETS`] or the budget runs out.
pub fn max_y_free_graph(n: usize, k: usize, b: usize, budget: &SearchBudget) -> Result<SearchOutcome<KGraph>> {
    if k == 0 || k > n || b >= k {
        return invalid(format!("need 0 <= b < k <= n, got n = {n}, k = {k}, b = {b}"));
    }
    if binom(n, k) > MAX_Y_FREE_KSETS {
        return Ok(SearchOutcome::Exhausted);
    }
    let sets: Vec<VSet> = VSet::full(n).subsets(k).collect();
    let nbr: Vec<u32> = sets
        .iter()
        .map(|&e| {
            sets.iter()
                .enumerate()
                .filter(|&(_, &f)| f != e && (e & f).len() == b)
                .fold(0u32, |a, (j, _)| a | 1 << j)
        })
        .collect();
    let all = if sets.len() == 32 {
        u32::MAX
    } else {
        (1u32 << sets.len()) - 1
    };
    let mut mis = Mis {
        best: 0,
        meter: Meter::new(budget),
        nbr,
    };
    if !mis.rec(all & !mis.nbr[0] & !1, 1) {
        return Ok(SearchOutcome::Exhausted);
    }
    let edges = (0..sets.len())
        .filter(|&i| mis.best >> i & 1 == 1)
        .map(|i| sets[i].mask());
    Ok(SearchOutcome::Found(KGraph::new(n, k, edges)?))
}

/// Edge count of a maximum `Y_{k,b}`-free graph on `n` vertices.
pub fn max_y_free_edges(n: usize, k: usize, b: usize, budget: &SearchBudget) -> Result<SearchOutcome<usize>> {
    Ok(max_y_free_graph(n, k, b, budget)?.map(|g| g.edge_count()))
}
