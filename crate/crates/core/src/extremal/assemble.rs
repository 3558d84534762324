//! Long ℓ-path on `X ∪ Y` with prescribed ends, built block by block.
//!
//! The path reads `L₁ R₁ S₁ x₁ R'₁ L₂ … L_t R_t S_t x_t R'_t L_{t+1}` with
//! `|L_i| = ℓ`, `|R_i| = |R'_i| = k-2ℓ`, `|S_i| = ℓ-1`, `X = {x_i}` and
//! `L_{t+1} = L₀`, so its edges are `L_i R_i S_i x_i` and
//! `S_i x_i R'_i L_{i+1}`.
//!
//! The blocks come from an auxiliary `(k-1)`-graph `𝒢` on `Y` whose edges
//! are the `(k-1)`-sets completed to an edge by most of `X`. A few blocks
//! are cut from good `(2k-ℓ-1)`-sets chosen greedily (they serve the
//! vertices of `X` that see few of the remaining blocks) together with
//! separator sets; the remaining blocks come from exact search in `𝒢`.
//! Vertices of `X` are then matched to blocks.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremal::connect::lex_sorted;
use crate::extremal::{AssemblyState, SolverConfig};
use crate::graph::KGraph;
use crate::paths::{validate_path, EllPath};
use crate::search::{max_bipartite_matching, path_windows, OrderProblem, SearchBudget, SearchOutcome};
use crate::vset::{binom, binom_f, VSet};

/// Largest number of `(2k-ℓ-1)`-sets scanned for the good-set family.
const MAX_GOOD_CANDIDATES: u64 = 2_000_000;

/// One block `L R S x R'` of the long path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub l: Vec<usize>,
    pub r: Vec<usize>,
    pub s: Vec<usize>,
    pub x: usize,
    pub r2: Vec<usize>,
}

/// Block without its `X` vertex; `next` is the following `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Slot {
    l: VSet,
    r: VSet,
    s: VSet,
    r2: VSet,
    next: VSet,
}

impl Slot {
    fn accepts(&self, h: &KGraph, x: usize) -> bool {
        h.contains((self.l | self.r | self.s).with(x)) && h.contains((self.s | self.r2 | self.next).with(x))
    }
}

struct Assembler<'a> {
    h: &'a KGraph,
    k: usize,
    l: usize,
    x: VSet,
    y: VSet,
    l0: VSet,
    l1: VSet,
    rho: f64,
    g: KGraph,
    nodes: u64,
    diagnostics: Vec<String>,
}

fn fail(reason: String) -> Error {
    Error::Pipeline {
        stage: "assemble",
        reason,
    }
}

/// Hamilton ℓ-path of `H[A₁ ∪ B₁]` from `L₁` to `L₀` (the ends of `Q`
/// swapped), recorded block by block in `state.blocks`.
///
/// When the block construction fails with the good-set family, it is
/// retried without it; after that, with `config.fallback`, an exact search
/// for the path replaces it.
pub fn assemble_hamilton_path(h: &KGraph, state: &mut AssemblyState, config: &SolverConfig) -> Result<EllPath> {
    let (k, l) = (h.k(), state.q.l());
    let (x, y) = (state.a1, state.b1);
    let t = x.len();
    if t == 0 || y.len() != (2 * k - 2 * l - 1) * t + l {
        return Err(fail(format!(
            "need |Y| = (2k-2l-1)|X| + l with |X| > 0, got |X| = {t}, |Y| = {}",
            y.len()
        )));
    }
    let mut asm = Assembler::new(h, state, config)?;
    asm.check_hypotheses();
    let attempt = match asm.build(true) {
        Ok(found) => Ok(found),
        Err(first) => {
            asm.diagnostics.push(format!("{first}; retrying without good sets"));
            asm.build(false)
        }
    };
    let result = match attempt {
        Ok((path, blocks)) => {
            state.blocks = blocks;
            Ok(path)
        }
        Err(reason) if config.fallback => {
            asm.diagnostics.push(format!("{reason}; used exact search"));
            match path_by_search(h, state, config.search_nodes) {
                Some(p) => {
                    state.blocks.clear();
                    Ok(p)
                }
                None => Err(fail(format!("{reason}; exact search found no path"))),
            }
        }
        Err(reason) => Err(fail(reason)),
    };
    state.diagnostics.append(&mut asm.diagnostics);
    result
}

/// Exact search for the path from `L₁` to `L₀` through `A₁ ∪ B₁`.
fn path_by_search(h: &KGraph, state: &AssemblyState, nodes: u64) -> Option<EllPath> {
    let (k, l) = (h.k(), state.q.l());
    let span = state.a1 | state.b1;
    let len = span.len();
    let (first, last) = (state.l1.to_vec(), state.l0.to_vec());
    let inner = span - state.l0 - state.l1;
    let allowed: Vec<VSet> = (0..len)
        .map(|p| {
            if p < l {
                VSet::singleton(first[p])
            } else if p >= len - l {
                VSet::singleton(last[p - (len - l)])
            } else {
                inner
            }
        })
        .collect();
    let problem = OrderProblem::new(h, path_windows(len, k, l), allowed).ok()?;
    let order = problem.solve(&SearchBudget::nodes(nodes)).found()?;
    let p = EllPath::new(k, l, order).ok()?;
    assert!(validate_path(h, &p).unwrap_or(false), "search returned an invalid path");
    Some(p)
}

impl<'a> Assembler<'a> {
    fn new(h: &'a KGraph, state: &AssemblyState, config: &SolverConfig) -> Result<Assembler<'a>> {
        let (k, l) = (h.k(), state.q.l());
        let (x, y) = (state.a1, state.b1);
        let t = x.len();
        let threshold = (1.0 - config.rho.sqrt()) * t as f64;
        let mut count: HashMap<u64, usize> = HashMap::new();
        for &e in h.edges() {
            if e & !(x | y).mask() == 0 && (e & x.mask()).count_ones() == 1 {
                *count.entry(e & y.mask()).or_default() += 1;
            }
        }
        let g = KGraph::new(
            h.n(),
            k - 1,
            count.into_iter().filter(|&(_, c)| c as f64 > threshold).map(|(s, _)| s),
        )?;
        Ok(Assembler {
            h,
            k,
            l,
            x,
            y,
            l0: state.l0,
            l1: state.l1,
            rho: config.rho,
            g,
            nodes: config.search_nodes,
            diagnostics: Vec::new(),
        })
    }

    /// Degree conditions of the assembly, reported when they fail.
    fn check_hypotheses(&mut self) {
        let (h, k, l, x, y, rho) = (self.h, self.k, self.l, self.x, self.y, self.rho);
        let full = binom_f(y.len(), k - 1);
        let worst_x = x
            .iter()
            .map(|v| h.non_deg_into(VSet::singleton(v), y))
            .max()
            .unwrap_or(0);
        if worst_x as f64 > rho * full {
            self.diagnostics.push(format!(
                "some x in X misses {worst_x} (k-1)-sets of Y, above rho C(|Y|, k-1) = {:.1}",
                rho * full
            ));
        }
        let worst_y = y
            .iter()
            .map(|v| h.rel_non_deg(VSet::singleton(v), x, y, 1).unwrap_or(0))
            .max()
            .unwrap_or(0);
        if worst_y as f64 > rho * full {
            self.diagnostics.push(format!(
                "some y in Y misses {worst_y} XY^(k-1)-sets, above rho C(|Y|, k-1) = {:.1}",
                rho * full
            ));
        }
        let end_bound = rho * binom_f(y.len(), k - l);
        for (name, end) in [("L0", self.l0), ("L1", self.l1)] {
            let miss = h.rel_non_deg(end, x, y, 1).unwrap_or(0);
            if miss as f64 > end_bound {
                self.diagnostics.push(format!(
                    "{name} misses {miss} XY^(k-1)-sets, above rho C(|Y|, k-l) = {end_bound:.1}"
                ));
            }
        }
    }

    /// Good `(2k-ℓ-1)`-sets of `Y'`, each with the set of `x` it suits.
    fn good_sets(&self) -> Vec<(VSet, VSet)> {
        let (h, g, k, l, y) = (self.h, &self.g, self.k, self.l, self.y);
        let pool = y - self.l0 - self.l1;
        let size = 2 * k - l - 1;
        if binom(pool.len(), size) > MAX_GOOD_CANDIDATES {
            return Vec::new();
        }
        let total = binom_f(y.len() - l, k - l - 1);
        let bound = self.rho.powf(0.25) * total;
        let mut ell_ok: HashMap<u64, bool> = HashMap::new();
        let mut out = Vec::new();
        for q in pool.subsets(size) {
            if !q.subsets(k - 1).all(|s| g.contains(s)) {
                continue;
            }
            let good = q.subsets(l).all(|s| {
                *ell_ok
                    .entry(s.mask())
                    .or_insert_with(|| total - (g.deg_into(s, y) as f64) <= bound)
            });
            if !good {
                continue;
            }
            let suits = self
                .x
                .iter()
                .filter(|&v| q.subsets(k - 1).all(|s| h.contains(s.with(v))))
                .fold(VSet::EMPTY, VSet::with);
            out.push((q, suits));
        }
        out
    }

    /// Disjoint good sets, at most `(t-1)/2`, picked one at a time to
    /// raise the smallest number of picked sets suiting any `x`.
    fn pick_good_sets(&self) -> Vec<(VSet, VSet)> {
        let t = self.x.len();
        let limit = (t - 1) / 2;
        if limit == 0 {
            return Vec::new();
        }
        let target = ((self.rho.sqrt() * self.y.len() as f64).ceil() as usize).max(1);
        let candidates = self.good_sets();
        let xs = self.x.to_vec();
        let mut counts = vec![0usize; xs.len()];
        let mut used = VSet::EMPTY;
        let mut picked = Vec::new();
        while picked.len() < limit && counts.iter().any(|&c| c < target) {
            let low = *counts.iter().min().expect("X is non-empty");
            let mut best: Option<((usize, usize, usize), usize)> = None;
            for (i, &(q, suits)) in candidates.iter().enumerate() {
                if !q.is_disjoint(used) {
                    continue;
                }
                let lifted = xs
                    .iter()
                    .zip(&counts)
                    .filter(|&(&v, &c)| c == low && suits.contains(v))
                    .count();
                let all_low = xs.iter().zip(&counts).filter(|&(_, &c)| c == low).count();
                let new_min = if lifted == all_low { low + 1 } else { low };
                let score = (new_min, lifted, suits.len());
                if best.is_none_or(|(b, _)| score > b) {
                    best = Some((score, i));
                }
            }
            let Some((_, i)) = best else { break };
            let (q, suits) = candidates[i];
            for (c, &v) in counts.iter_mut().zip(&xs) {
                if suits.contains(v) {
                    *c += 1;
                }
            }
            used = used | q;
            picked.push((q, suits));
        }
        picked
    }

    /// `(R, S, R')` from `avail` with `L ∪ R ∪ S` and `S ∪ R' ∪ next` edges
    /// of `𝒢`, `|S| = ℓ-1`.
    fn separator(&self, left: VSet, right: VSet, avail: VSet) -> Option<(VSet, VSet, VSet)> {
        let (g, k, l) = (&self.g, self.k, self.l);
        let sides = |end: VSet| -> Vec<VSet> {
            lex_sorted(avail.subsets(k - l - 1).filter(|&c| g.contains(c | end)).collect())
        };
        let (t1s, t2s) = (sides(left), sides(right));
        for &t1 in &t1s {
            if let Some(&t2) = t2s.iter().find(|&&t2| (t1 & t2).len() == l - 1) {
                let s = t1 & t2;
                return Some((t1 - s, s, t2 - s));
            }
        }
        None
    }

    /// Ordered `(k-1)`-graph typicality of a tuple inside `𝒢[within]`.
    fn rho_typical(&self, tuple: &[usize], within: VSet, rho0: f64) -> bool {
        let u = self.k - 1;
        let m = within.len();
        (1..=tuple.len()).all(|i| {
            let s = VSet::from_vertices(tuple[..i].iter().copied());
            let total = binom_f(m - i, u - i);
            let miss = total - self.g.deg_into(s, within) as f64;
            miss <= rho0.powi((u - i) as i32) * total
        })
    }

    fn build(&mut self, with_good_sets: bool) -> std::result::Result<(EllPath, Vec<Block>), String> {
        let (k, l) = (self.k, self.l);
        let t = self.x.len();
        let width = 2 * k - 2 * l - 1;
        let y_prime = self.y - self.l0 - self.l1;

        let mut good = if with_good_sets {
            self.pick_good_sets()
        } else {
            Vec::new()
        };
        // ls[i] is L_{i+1}; slots 2i and 2i+1 belong to the i-th good set
        let mut slots: Vec<Slot> = Vec::new();
        let mut ls = vec![self.l1];
        let taken = good.iter().fold(VSet::EMPTY, |a, &(q, _)| a | q);
        let mut avail = y_prime - taken;
        for (i, &(q, _)) in good.iter().enumerate() {
            let qv = q.to_vec();
            let left = VSet::from_vertices(qv[..l].iter().copied());
            let mid = qv[l..qv.len() - l].to_vec();
            let right = VSet::from_vertices(qv[qv.len() - l..].iter().copied());
            let Some((r, s, r2)) = self.separator(*ls.last().expect("starts with L1"), left, avail) else {
                self.diagnostics.push(format!(
                    "no separator before good set {i}; keeping {i} of {}",
                    good.len()
                ));
                let dropped = good[i..].iter().fold(VSet::EMPTY, |a, &(q, _)| a | q);
                avail = avail | dropped;
                good.truncate(i);
                break;
            };
            avail = avail - r - s - r2;
            slots.push(Slot {
                l: *ls.last().expect("starts with L1"),
                r,
                s,
                r2,
                next: left,
            });
            let cut = |a: usize, b: usize| VSet::from_vertices(mid[a..b].iter().copied());
            slots.push(Slot {
                l: left,
                r: cut(0, k - 2 * l),
                s: cut(k - 2 * l, k - l - 1),
                r2: cut(k - l - 1, 2 * k - 3 * l - 1),
                next: right,
            });
            ls.push(left);
            ls.push(right);
        }
        let q = good.len();
        let y1 = avail;
        let start = *ls.last().expect("starts with L1");
        let free = t - 2 * q;
        debug_assert_eq!(y1.len() + l, free * width);

        // positions: start (ℓ), then Y1, then L0 (ℓ)
        let len = free * width + l;
        let (first, last) = (start.to_vec(), self.l0.to_vec());
        let allowed: Vec<VSet> = (0..len)
            .map(|p| {
                if p < l {
                    VSet::singleton(first[p])
                } else if p >= len - l {
                    VSet::singleton(last[p - (len - l)])
                } else {
                    y1
                }
            })
            .collect();
        let windows: Vec<Vec<usize>> = (0..free)
            .flat_map(|j| {
                let b = j * width;
                [(b..b + k - 1).collect(), (b + k - l..b + 2 * k - l - 1).collect()]
            })
            .collect();
        let problem = OrderProblem::new(&self.g, windows, allowed).map_err(|e| e.to_string())?;

        let j = k - l - 1;
        let rho0 = (22.0 * 3.0 * self.rho.sqrt()).powf(1.0 / (k - 1) as f64);
        let check_ends = rho0 < 1.0 && y1.len() >= 2 * j;
        let xs = self.x.to_vec();
        let mut seen: HashSet<Vec<Slot>> = HashSet::new();
        let (mut tried, mut rejected) = (0usize, 0usize);
        let mut result = None;
        let budget = SearchBudget::nodes(self.nodes);
        let outcome = problem.for_each_solution(&budget, |order| {
            let tail: Vec<Slot> = (0..free)
                .map(|jj| {
                    let b = jj * width;
                    let set = |a: usize, c: usize| VSet::from_vertices(order[b + a..b + c].iter().copied());
                    Slot {
                        l: set(0, l),
                        r: set(l, k - l),
                        s: set(k - l, k - 1),
                        r2: set(k - 1, width),
                        next: set(width, width + l),
                    }
                })
                .collect();
            if !seen.insert(tail.clone()) {
                return false;
            }
            if check_ends {
                let inner = &order[l..len - l];
                let head: Vec<usize> = inner[..j].iter().rev().copied().collect();
                let tail_tuple = &inner[inner.len() - j..];
                if !self.rho_typical(&head, y1, rho0) || !self.rho_typical(tail_tuple, y1, rho0) {
                    rejected += 1;
                    return false;
                }
            }
            tried += 1;
            let all: Vec<Slot> = slots.iter().copied().chain(tail).collect();
            if let Some((assign, note)) = match_blocks(self.h, &all, &xs, q) {
                result = Some((all, assign, note));
                return true;
            }
            false
        });
        if rejected > 0 {
            self.diagnostics
                .push(format!("{rejected} block paths had untypical end tuples"));
        }
        let (all, assign, note) = match (outcome, result) {
            (SearchOutcome::Found(()), Some(r)) => r,
            (SearchOutcome::Exhausted, _) => {
                return Err(format!("budget ran out after {tried} block paths of 𝒢 (q = {q})"))
            }
            _ => {
                return Err(format!(
                    "none of {tried} block paths of 𝒢 has a perfect matching (q = {q})"
                ))
            }
        };
        if let Some(note) = note {
            self.diagnostics.push(note);
        }

        let mut order = Vec::with_capacity(self.x.len() + self.y.len());
        let mut blocks = Vec::with_capacity(t);
        for (slot, &xi) in all.iter().zip(&assign) {
            let b = Block {
                l: slot.l.to_vec(),
                r: slot.r.to_vec(),
                s: slot.s.to_vec(),
                x: xs[xi],
                r2: slot.r2.to_vec(),
            };
            order.extend(&b.l);
            order.extend(&b.r);
            order.extend(&b.s);
            order.push(b.x);
            order.extend(&b.r2);
            blocks.push(b);
        }
        order.extend(self.l0.iter());
        let path = EllPath::new(k, l, order).map_err(|e| e.to_string())?;
        for w in path.windows() {
            assert!(
                self.h.contains(w),
                "assembled block window {:?} is not an edge",
                w.to_vec()
            );
        }
        assert_eq!((path.start(), path.end()), (self.l1, self.l0));
        assert_eq!(path.vertex_set(), self.x | self.y);
        Ok((path, blocks))
    }
}

/// Assign each `x` to a slot. First the `x` that see at most half of the
/// free slots go to good-set slots, then the unused good-set and separator
/// slots take other vertices, then the rest is matched to the free slots;
/// a global maximum matching is used if any of these steps fails. Returns
/// the `x`-index for each slot and a note when the global matching was
/// needed.
fn match_blocks(h: &KGraph, slots: &[Slot], xs: &[usize], q: usize) -> Option<(Vec<usize>, Option<String>)> {
    let t = slots.len();
    let adj: Vec<Vec<usize>> = xs
        .iter()
        .map(|&x| (0..t).filter(|&j| slots[j].accepts(h, x)).collect())
        .collect();
    match priority_matching(&adj, t, q) {
        Ok(assign) => Some((assign, None)),
        Err(step) => {
            let m = max_bipartite_matching(&adj, t);
            if !m.is_left_perfect() {
                return None;
            }
            let mut assign = vec![0; t];
            for (xi, j) in m.pairs() {
                assign[j] = xi;
            }
            Some((
                assign,
                Some(format!(
                    "priority matching failed at step {step}; used a global matching"
                )),
            ))
        }
    }
}

fn priority_matching(adj: &[Vec<usize>], t: usize, q: usize) -> std::result::Result<Vec<usize>, u8> {
    let free_slots: Vec<usize> = (2 * q..t).collect();
    let half = free_slots.len();
    let x0: Vec<usize> = (0..adj.len())
        .filter(|&xi| 2 * adj[xi].iter().filter(|&&j| j >= 2 * q).count() <= half)
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; t];
    let mut placed = vec![false; adj.len()];

    // step 1: X0 into good-set slots
    let good_slots: Vec<usize> = (0..q).map(|i| 2 * i + 1).collect();
    let a1: Vec<Vec<usize>> = x0
        .iter()
        .map(|&xi| (0..q).filter(|&g| adj[xi].contains(&good_slots[g])).collect())
        .collect();
    let m1 = max_bipartite_matching(&a1, q);
    if !m1.is_left_perfect() {
        return Err(1);
    }
    for (i, g) in m1.pairs() {
        owner[good_slots[g]] = Some(x0[i]);
        placed[x0[i]] = true;
    }

    // step 2: unused slots among the first 2q take vertices outside X0
    let open: Vec<usize> = (0..2 * q).filter(|&j| owner[j].is_none()).collect();
    let rest: Vec<usize> = (0..adj.len()).filter(|&xi| !placed[xi]).collect();
    let a2: Vec<Vec<usize>> = open
        .iter()
        .map(|&j| (0..rest.len()).filter(|&r| adj[rest[r]].contains(&j)).collect())
        .collect();
    let m2 = max_bipartite_matching(&a2, rest.len());
    if !m2.is_left_perfect() {
        return Err(2);
    }
    for (i, r) in m2.pairs() {
        owner[open[i]] = Some(rest[r]);
        placed[rest[r]] = true;
    }

    // step 3: the remaining vertices onto the free slots
    let rest: Vec<usize> = (0..adj.len()).filter(|&xi| !placed[xi]).collect();
    if rest.len() != free_slots.len() {
        return Err(3);
    }
    let a3: Vec<Vec<usize>> = rest
        .iter()
        .map(|&xi| adj[xi].iter().filter(|&&j| j >= 2 * q).map(|&j| j - 2 * q).collect())
        .collect();
    let m3 = max_bipartite_matching(&a3, free_slots.len());
    if !m3.is_left_perfect() {
        return Err(3);
    }
    for (i, f) in m3.pairs() {
        owner[free_slots[f]] = Some(rest[i]);
    }
    Ok(owner.into_iter().map(|o| o.expect("every slot is owned")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_ideal_extremal, perturb_extremal, ExtremalInstance};
    use crate::extremal::{build_short_path, classify_ell_sets, classify_vertices};

    fn assemble(inst: &ExtremalInstance, fallback: bool) -> Result<(EllPath, AssemblyState)> {
        let c = SolverConfig::default().with_fallback(fallback);
        let cv = classify_vertices(&inst.graph, &inst.partition, &c);
        let t = classify_ell_sets(&inst.graph, inst.ell, &inst.partition, &cv, &c);
        let mut st = build_short_path(&inst.graph, &inst.partition, &cv, &t, &c)?;
        let p = assemble_hamilton_path(&inst.graph, &mut st, &c)?;
        Ok((p, st))
    }

    #[test]
    fn ideal_3_1_8_single_block() {
        let inst = build_ideal_extremal(3, 1, 8).unwrap();
        let (p, st) = assemble(&inst, false).unwrap();
        assert!(validate_path(&inst.graph, &p).unwrap());
        assert_eq!((p.start(), p.end()), (st.l1, st.l0));
        assert_eq!(st.blocks.len(), 1);
    }

    #[test]
    fn ideal_instances_use_blocks() {
        for (k, l, n) in [(3, 1, 16), (3, 1, 24), (4, 1, 12), (5, 2, 12), (5, 2, 18)] {
            let inst = build_ideal_extremal(k, l, n).unwrap();
            let (p, st) = assemble(&inst, false).unwrap();
            assert!(validate_path(&inst.graph, &p).unwrap(), "({k},{l},{n})");
            assert_eq!(st.blocks.len(), st.a1.len());
            for b in &st.blocks {
                assert_eq!(
                    (b.l.len(), b.r.len(), b.s.len(), b.r2.len()),
                    (l, k - 2 * l, l - 1, k - 2 * l)
                );
            }
        }
    }

    #[test]
    fn perturbed_3_1_16() {
        let base = build_ideal_extremal(3, 1, 16).unwrap();
        for seed in 0..20 {
            let inst = perturb_extremal(&base, seed, 3, 3).unwrap().instance;
            let (p, _) = assemble(&inst, false).unwrap();
            assert!(validate_path(&inst.graph, &p).unwrap());
        }
    }

    #[test]
    fn priority_steps() {
        // two good-set slots (0, 1) and one free slot (2); x0 only fits slot 1
        let adj = vec![vec![1], vec![0, 2], vec![0, 1, 2]];
        let assign = priority_matching(&adj, 3, 1).unwrap();
        assert_eq!(assign[1], 0);
        let mut xs = assign.clone();
        xs.sort_unstable();
        assert_eq!(xs, vec![0, 1, 2]);
        // x0 sees no free slot and no good-set slot either
        assert_eq!(priority_matching(&[vec![], vec![0, 2], vec![1, 2]], 3, 1), Err(1));
        // the separator slot 0 fits nobody
        assert_eq!(priority_matching(&[vec![1, 2], vec![1, 2], vec![1, 2]], 3, 1), Err(2));
    }
}
