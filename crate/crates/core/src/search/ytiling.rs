//! Maximum `Y_{k,b}`-tilings by branch and bound.

use std::collections::HashSet;

use crate::error::{invalid, Result};
use crate::graph::KGraph;
use crate::search::{Meter, SearchBudget, SearchOutcome};
use crate::tiling::{Tiling, YCopy};
use crate::vset::VSet;

/// One `Y_{k,b}` copy per vertex set spanned by a copy inside `within`, in
/// order of first discovery over pairs of edges in mask order.
pub fn all_y_copies(h: &KGraph, b: usize, within: VSet) -> Vec<YCopy> {
    let edges: Vec<u64> = h.edges().iter().copied().filter(|&e| e & !within.mask() == 0).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if (e & f).count_ones() as usize == b && seen.insert(e | f) {
                out.push(YCopy::from_edges(VSet(e), VSet(f)));
            }
        }
    }
    out
}

struct Packer<'m> {
    width: usize,
    unions: Vec<u64>,
    best: Vec<usize>,
    meter: Meter<'m>,
}

impl Packer<'_> {
    /// Returns false when the budget ran out.
    fn rec(&mut self, live: &[usize], chosen: &mut Vec<usize>) -> bool {
        if !self.meter.tick() {
            return false;
        }
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }
        let reach = live.iter().fold(0u64, |a, &i| a | self.unions[i]);
        if chosen.len() + reach.count_ones() as usize / self.width <= self.best.len() {
            return true;
        }
        let Some(v) = VSet(reach).first() else {
            return true;
        };
        let bit = 1u64 << v;
        let through: Vec<usize> = live.iter().copied().filter(|&i| self.unions[i] & bit != 0).collect();
        for i in through {
            let u = self.unions[i];
            let rest: Vec<usize> = live.iter().copied().filter(|&j| self.unions[j] & u == 0).collect();
            chosen.push(i);
            let ok = self.rec(&rest, chosen);
            chosen.pop();
            if !ok {
                return false;
            }
        }
        // leave v uncovered
        let rest: Vec<usize> = live.iter().copied().filter(|&j| self.unions[j] & bit == 0).collect();
        self.rec(&rest, chosen)
    }
}

/// Maximum number of vertex-disjoint `Y_{k,b}` copies in `h`.
pub fn max_y_tiling(h: &KGraph, b: usize, budget: &SearchBudget) -> Result<SearchOutcome<Tiling>> {
    if b >= h.k() {
        return invalid(format!("need b < k, got b = {b}, k = {}", h.k()));
    }
    let copies = all_y_copies(h, b, h.vertices());
    let mut p = Packer {
        width: 2 * h.k() - b,
        unions: copies.iter().map(|c| c.vertices().mask()).collect(),
        best: Vec::new(),
        meter: Meter::new(budget),
    };
    let live: Vec<usize> = (0..copies.len()).collect();
    if !p.rec(&live, &mut Vec::new()) {
        return Ok(SearchOutcome::Exhausted);
    }
    let chosen = p.best.iter().map(|&i| copies[i].clone()).collect();
    Ok(SearchOutcome::Found(Tiling::new(h.n(), chosen)?))
}
