//! ℓ-paths and ℓ-cycles.
//!
//! Both types store only the vertex order; edges are the k-windows starting
//! at every multiple of `k - ℓ`. A path on `t` vertices has `(t-ℓ)/(k-ℓ)`
//! windows and ends formed by its first and last `ℓ` vertices; a cycle on
//! `n` vertices has `n/(k-ℓ)` windows taken cyclically. The empty order is a
//! valid path with no edges.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::KGraph;
use crate::search::{Meter, SearchBudget, SearchOutcome};
use crate::vset::VSet;

fn check_params(k: usize, l: usize) -> Result<()> {
    if l == 0 || l >= k {
        return invalid(format!("need 1 <= l < k, got k = {k}, l = {l}"));
    }
    Ok(())
}

fn check_distinct(order: &[usize]) -> Result<()> {
    if let Some(&v) = order.iter().find(|&&v| v >= 64) {
        return invalid(format!("vertex {v} out of range"));
    }
    if VSet::from_vertices(order.iter().copied()).len() != order.len() {
        return invalid("vertex order repeats a vertex");
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllPath {
    k: usize,
    l: usize,
    order: Vec<usize>,
}

impl EllPath {
    pub fn new(k: usize, l: usize, order: Vec<usize>) -> Result<EllPath> {
        check_params(k, l)?;
        check_distinct(&order)?;
        let t = order.len();
        if t != 0 && (t < l || !(t - l).is_multiple_of(k - l)) {
            return invalid(format!(
                "{t} vertices cannot form an {l}-path of a {k}-graph: k-l must divide t-l"
            ));
        }
        Ok(EllPath { k, l, order })
    }

    /// Path with no vertices.
    pub fn empty(k: usize, l: usize) -> Result<EllPath> {
        EllPath::new(k, l, Vec::new())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        if self.order.len() < self.l {
            0
        } else {
            (self.order.len() - self.l) / (self.k - self.l)
        }
    }

    pub fn windows(&self) -> Vec<VSet> {
        let step = self.k - self.l;
        (0..self.edge_count())
            .map(|j| VSet::from_vertices(self.order[j * step..j * step + self.k].iter().copied()))
            .collect()
    }

    pub fn vertex_set(&self) -> VSet {
        VSet::from_vertices(self.order.iter().copied())
    }

    /// First `ℓ` vertices.
    pub fn start(&self) -> VSet {
        VSet::from_vertices(self.order.iter().take(self.l).copied())
    }

    /// Last `ℓ` vertices.
    pub fn end(&self) -> VSet {
        let t = self.order.len();
        VSet::from_vertices(self.order[t.saturating_sub(self.l)..].iter().copied())
    }

    pub fn reversed(&self) -> EllPath {
        let mut order = self.order.clone();
        order.reverse();
        EllPath {
            k: self.k,
            l: self.l,
            order,
        }
    }

    /// Glue `other` onto the end of `self`; the last `ℓ` vertices of `self`
    /// must be the first `ℓ` vertices of `other`, as sets. The shared end
    /// keeps the order it has in `self`.
    pub fn concat(&self, other: &EllPath) -> Result<EllPath> {
        if self.is_empty() {
            return Ok(other.clone());
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        if self.k != other.k || self.l != other.l {
            return invalid("cannot join paths with different (k, l)");
        }
        if self.end() != other.start() {
            return invalid(format!("end {:?} does not match start {:?}", self.end(), other.start()));
        }
        let mut order = self.order.clone();
        order.extend_from_slice(&other.order[self.l..]);
        EllPath::new(self.k, self.l, order)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllCycle {
    k: usize,
    l: usize,
    order: Vec<usize>,
}

impl EllCycle {
    pub fn new(k: usize, l: usize, order: Vec<usize>) -> Result<EllCycle> {
        check_params(k, l)?;
        check_distinct(&order)?;
        if order.is_empty() || !order.len().is_multiple_of(k - l) {
            return invalid(format!(
                "{} vertices cannot form an {l}-cycle: k-l = {} must divide it",
                order.len(),
                k - l
            ));
        }
        if order.len() < k {
            return invalid("cycle shorter than one edge");
        }
        Ok(EllCycle { k, l, order })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.order.len() / (self.k - self.l)
    }

    pub fn windows(&self) -> Vec<VSet> {
        let n = self.order.len();
        let step = self.k - self.l;
        (0..self.edge_count())
            .map(|j| VSet::from_vertices((0..self.k).map(|i| self.order[(j * step + i) % n])))
            .collect()
    }

    pub fn vertex_set(&self) -> VSet {
        VSet::from_vertices(self.order.iter().copied())
    }
}

/// True iff every window of `p` is an edge of `h`.
pub fn validate_path(h: &KGraph, p: &EllPath) -> Result<bool> {
    if p.k() != h.k() {
        return invalid(format!("path is {}-uniform, graph is {}-uniform", p.k(), h.k()));
    }
    if let Some(&v) = p.order().iter().find(|&&v| v >= h.n()) {
        return invalid(format!("vertex {v} out of range for n = {}", h.n()));
    }
    Ok(p.windows().into_iter().all(|w| h.contains(w)))
}

/// True iff `c` is a Hamilton ℓ-cycle of `h`: spanning, and every cyclic
/// window is an edge.
pub fn validate_cycle(h: &KGraph, c: &EllCycle) -> Result<bool> {
    if c.k() != h.k() {
        return invalid(format!("cycle is {}-uniform, graph is {}-uniform", c.k(), h.k()));
    }
    if c.vertex_set() != h.vertices() {
        return invalid("cycle does not span the vertex set");
    }
    Ok(c.windows().into_iter().all(|w| h.contains(w)))
}

/// Path / cycle interchange format: `{"l", "k", "order", "cyclic"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathJson {
    pub l: usize,
    pub k: usize,
    pub order: Vec<usize>,
    pub cyclic: bool,
}

impl From<&EllPath> for PathJson {
    fn from(p: &EllPath) -> PathJson {
        PathJson {
            l: p.l(),
            k: p.k(),
            order: p.order().to_vec(),
            cyclic: false,
        }
    }
}

impl From<&EllCycle> for PathJson {
    fn from(c: &EllCycle) -> PathJson {
        PathJson {
            l: c.l(),
            k: c.k(),
            order: c.order().to_vec(),
            cyclic: true,
        }
    }
}

/// Either shape read back from [`PathJson`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathOrCycle {
    Path(EllPath),
    Cycle(EllCycle),
}

impl TryFrom<PathJson> for PathOrCycle {
    type Error = Error;
    fn try_from(j: PathJson) -> Result<PathOrCycle> {
        if j.cyclic {
            EllCycle::new(j.k, j.l, j.order).map(PathOrCycle::Cycle)
        } else {
            EllPath::new(j.k, j.l, j.order).map(PathOrCycle::Path)
        }
    }
}

/// A host graph together with disjoint vertex classes `V_1, .., V_p`.
#[derive(Clone, Debug)]
pub struct PartitionedKGraph {
    pub base: KGraph,
    pub parts: Vec<VSet>,
}

impl PartitionedKGraph {
    pub fn new(base: KGraph, parts: Vec<VSet>) -> Result<PartitionedKGraph> {
        let mut seen = VSet::EMPTY;
        for p in &parts {
            if !p.fits(base.n()) {
                return invalid("part has vertices outside the host");
            }
            if !p.is_disjoint(seen) {
                return invalid("parts are not pairwise disjoint");
            }
            seen = seen | *p;
        }
        Ok(PartitionedKGraph { base, parts })
    }

    fn union_of(&self, range: std::ops::Range<usize>) -> VSet {
        self.parts[range].iter().fold(VSet::EMPTY, |a, &p| a | p)
    }

    /// True when every edge meets every part in exactly one vertex.
    pub fn is_k_partite(&self) -> bool {
        self.parts.len() == self.base.k()
            && self
                .base
                .edge_sets()
                .all(|e| self.parts.iter().all(|&p| (e & p).len() == 1))
    }
}

/// True iff every intersection of consecutive edges of `p` lies inside
/// `V_1 ∪ .. ∪ V_ℓ` or inside `V_{ℓ+1} ∪ .. ∪ V_{2ℓ}`.
pub fn is_canonical(p: &EllPath, g: &PartitionedKGraph) -> bool {
    let l = p.l();
    if g.parts.len() < 2 * l {
        return false;
    }
    let low = g.union_of(0..l);
    let high = g.union_of(l..2 * l);
    p.windows()
        .windows(2)
        .all(|w| (w[0] & w[1]).is_subset(low) || (w[0] & w[1]).is_subset(high))
}

/// Index of crossing edges by their restriction to the two overlap groups.
struct CanonicalIndex {
    low: VSet,
    high: VSet,
    by_low: HashMap<u64, Vec<u64>>,
    by_high: HashMap<u64, Vec<u64>>,
}

/// Which group of the current last edge is shared with the next edge.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Side {
    Low,
    High,
}

impl Side {
    fn flip(self) -> Side {
        match self {
            Side::Low => Side::High,
            Side::High => Side::Low,
        }
    }
}

impl CanonicalIndex {
    fn new(g: &PartitionedKGraph, l: usize) -> CanonicalIndex {
        let low = g.union_of(0..l);
        let high = g.union_of(l..2 * l);
        let mut by_low: HashMap<u64, Vec<u64>> = HashMap::new();
        let mut by_high: HashMap<u64, Vec<u64>> = HashMap::new();
        for &e in g.base.edges() {
            by_low.entry(e & low.mask()).or_default().push(e);
            by_high.entry(e & high.mask()).or_default().push(e);
        }
        CanonicalIndex {
            low,
            high,
            by_low,
            by_high,
        }
    }

    fn group(&self, side: Side) -> VSet {
        match side {
            Side::Low => self.low,
            Side::High => self.high,
        }
    }

    /// Edges sharing exactly `e`'s `side` group with `e` and otherwise
    /// avoiding `used`.
    fn continuations<'a>(&'a self, e: u64, side: Side, used: VSet) -> impl Iterator<Item = u64> + 'a {
        let key = e & self.group(side).mask();
        let list = match side {
            Side::Low => self.by_low.get(&key),
            Side::High => self.by_high.get(&key),
        };
        list.into_iter()
            .flatten()
            .copied()
            .filter(move |&f| f != e && (f & !key) & used.mask() == 0)
    }

    /// Vertex order of a canonical path given its edges and the side its
    /// first edge shares with the second.
    fn order(&self, edges: &[u64], first_shared: Side) -> Vec<usize> {
        let mut order = Vec::new();
        let mut shared = first_shared;
        for (i, &e) in edges.iter().enumerate() {
            let e = VSet(e);
            let out = self.group(shared);
            let inn = self.group(shared.flip());
            if i == 0 {
                order.extend((e & inn).iter());
            }
            order.extend((e - out - inn).iter());
            order.extend((e & out).iter());
            shared = shared.flip();
        }
        order
    }
}

/// Greedy canonical ℓ-path in a k-partite host.
///
/// Every edge is tried as a start in both orientations; from each start the
/// path is extended by the continuation with the most onward continuations
/// (lowest mask on ties), and once stuck it is extended from its other end
/// the same way. The longest path found is returned.
pub fn greedy_canonical_path(g: &PartitionedKGraph, l: usize) -> Result<EllPath> {
    let k = g.base.k();
    check_params(k, l)?;
    if 2 * l > k || g.parts.len() < 2 * l {
        return invalid(format!(
            "canonical paths need l < k/2 and at least 2l parts (k = {k}, l = {l})"
        ));
    }
    if g.base.edge_count() == 0 {
        return EllPath::empty(k, l);
    }
    let idx = CanonicalIndex::new(g, l);
    let mut best: Option<(Vec<u64>, Side)> = None;
    for &e in g.base.edges() {
        for side in [Side::High, Side::Low] {
            let (edges, first) = greedy_from(&idx, e, side);
            if best.as_ref().is_none_or(|(b, _)| edges.len() > b.len()) {
                best = Some((edges, first));
            }
        }
    }
    let (edges, first) = best.expect("at least one edge");
    EllPath::new(k, l, idx.order(&edges, first))
}

fn extend_greedily(idx: &CanonicalIndex, edges: &mut Vec<u64>, mut side: Side, used: &mut VSet) {
    loop {
        let last = *edges.last().unwrap();
        let mut pick: Option<(usize, u64)> = None;
        for f in idx.continuations(last, side, *used) {
            let onward = idx.continuations(f, side.flip(), *used | VSet(f)).count();
            if pick.is_none_or(|(s, m)| onward > s || (onward == s && f < m)) {
                pick = Some((onward, f));
            }
        }
        match pick {
            Some((_, f)) => {
                *used = *used | VSet(f);
                edges.push(f);
                side = side.flip();
            }
            None => return,
        }
    }
}

fn greedy_from(idx: &CanonicalIndex, start: u64, side: Side) -> (Vec<u64>, Side) {
    let mut used = VSet(start);
    let mut edges = vec![start];
    extend_greedily(idx, &mut edges, side, &mut used);
    // the other end of the path: the first edge's free group is `side.flip()`
    let mut back = vec![start];
    extend_greedily(idx, &mut back, side.flip(), &mut used);
    if back.len() == 1 {
        return (edges, side);
    }
    // back[1..] prepended in reverse; the new first edge shares with the
    // second one the side it was attached through, i.e. the alternation is
    // fixed by parity
    let extra = back.len() - 1;
    let mut all: Vec<u64> = back[1..].iter().rev().copied().collect();
    all.extend(edges);
    let first = if extra % 2 == 0 { side.flip() } else { side };
    (all, first)
}

/// Exhaustive search for a canonical ℓ-path with at least `min_edges` edges.
pub fn canonical_path_exhaustive(
    g: &PartitionedKGraph,
    l: usize,
    min_edges: usize,
    budget: &SearchBudget,
) -> Result<SearchOutcome<EllPath>> {
    let k = g.base.k();
    check_params(k, l)?;
    if min_edges == 0 {
        return Ok(SearchOutcome::Found(EllPath::empty(k, l)?));
    }
    let idx = CanonicalIndex::new(g, l);
    let mut meter = Meter::new(budget);
    for &e in g.base.edges() {
        for side in [Side::High, Side::Low] {
            let mut stack = vec![e];
            match dfs_canonical(&idx, &mut stack, side, VSet(e), min_edges, &mut meter) {
                Some(true) => return EllPath::new(k, l, idx.order(&stack, side)).map(SearchOutcome::Found),
                Some(false) => {}
                None => return Ok(SearchOutcome::Exhausted),
            }
        }
    }
    Ok(SearchOutcome::NotFound)
}

fn dfs_canonical(
    idx: &CanonicalIndex,
    stack: &mut Vec<u64>,
    side: Side,
    used: VSet,
    target: usize,
    meter: &mut Meter,
) -> Option<bool> {
    if stack.len() >= target {
        return Some(true);
    }
    if !meter.tick() {
        return None;
    }
    let last = *stack.last().unwrap();
    let cands: Vec<u64> = idx.continuations(last, side, used).collect();
    for f in cands {
        stack.push(f);
        match dfs_canonical(idx, stack, side.flip(), used | VSet(f), target, meter) {
            Some(false) => {
                stack.pop();
            }
            other => return other,
        }
    }
    Some(false)
}

/// Greedy canonical path, topped up by exhaustive search when the greedy
/// result has fewer than `min_edges` edges.
pub fn canonical_path_at_least(
    g: &PartitionedKGraph,
    l: usize,
    min_edges: usize,
    budget: &SearchBudget,
) -> Result<SearchOutcome<EllPath>> {
    let greedy = greedy_canonical_path(g, l)?;
    if greedy.edge_count() >= min_edges {
        return Ok(SearchOutcome::Found(greedy));
    }
    canonical_path_exhaustive(g, l, min_edges, budget)
}
