//! The k-uniform hypergraph type and its counting primitives.
//!
//! Edges are stored twice: a sorted vector of masks for iteration and a hash
//! set for membership. Per-vertex incidence lists back the degree queries and
//! the exact searches. A [`KGraph`] never changes after construction; the
//! `with_*` methods return new graphs.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::vset::{binom, VSet};

/// Largest supported uniformity.
pub const MAX_K: usize = 8;
/// Largest supported vertex count.
pub const MAX_N: usize = 64;

#[derive(Clone)]
pub struct KGraph {
    n: usize,
    k: usize,
    edges: Vec<u64>,
    index: HashSet<u64>,
    incidence: Vec<Vec<u64>>,
}

impl std::fmt::Debug for KGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("KGraph")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("edges", &self.edges.len())
            .finish()
    }
}

impl PartialEq for KGraph {
    fn eq(&self, other: &KGraph) -> bool {
        self.n == other.n && self.k == other.k && self.edges == other.edges
    }
}

impl Eq for KGraph {}

/// Minimum `d`-degree and the full degree histogram over all `d`-sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub d: usize,
    pub min_deg: usize,
    pub histogram: BTreeMap<usize, u64>,
}

/// Link of a vertex set: a `(k-|S|)`-graph on the same vertex indices, with
/// the vertices of `S` isolated and recorded in `excluded`.
#[derive(Clone, Debug)]
pub struct LinkGraph {
    pub graph: KGraph,
    pub excluded: VSet,
}

impl KGraph {
    /// Build a graph from edge masks. Duplicates are merged; every mask must
    /// have exactly `k` bits, all below `n`.
    pub fn new<I: IntoIterator<Item = u64>>(n: usize, k: usize, edges: I) -> Result<KGraph> {
        if n == 0 || n > MAX_N {
            return invalid(format!("n = {n} outside 1..={MAX_N}"));
        }
        if k == 0 || k > MAX_K || k > n {
            return invalid(format!("k = {k} outside 1..=min({MAX_K}, n = {n})"));
        }
        let all = VSet::full(n).mask();
        let mut list = Vec::new();
        for e in edges {
            if e.count_ones() as usize != k {
                return invalid(format!("edge {:?} does not have {k} vertices", VSet(e)));
            }
            if e & !all != 0 {
                return invalid(format!("edge {:?} has a vertex >= n = {n}", VSet(e)));
            }
            list.push(e);
        }
        Ok(Self::from_checked(n, k, list))
    }

    fn from_checked(n: usize, k: usize, mut list: Vec<u64>) -> KGraph {
        list.sort_unstable();
        list.dedup();
        let index: HashSet<u64> = list.iter().copied().collect();
        let mut incidence = vec![Vec::new(); n];
        for &e in &list {
            for v in VSet(e) {
                incidence[v].push(e);
            }
        }
        KGraph {
            n,
            k,
            edges: list,
            index,
            incidence,
        }
    }

    /// Build from 0-based vertex lists.
    pub fn from_vertex_lists(n: usize, k: usize, lists: &[Vec<usize>]) -> Result<KGraph> {
        let mut masks = Vec::with_capacity(lists.len());
        for l in lists {
            if let Some(&v) = l.iter().find(|&&v| v >= n) {
                return invalid(format!("vertex {v} out of range for n = {n}"));
            }
            let m = VSet::from_vertices(l.iter().copied());
            if m.len() != l.len() {
                return invalid(format!("edge {l:?} repeats a vertex"));
            }
            masks.push(m.mask());
        }
        KGraph::new(n, k, masks)
    }

    pub fn empty(n: usize, k: usize) -> Result<KGraph> {
        KGraph::new(n, k, std::iter::empty())
    }

    pub fn complete(n: usize, k: usize) -> Result<KGraph> {
        KGraph::new(n, k, VSet::full(n).subsets(k).map(VSet::mask))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertices(&self) -> VSet {
        VSet::full(self.n)
    }

    pub fn edges(&self) -> &[u64] {
        &self.edges
    }

    pub fn edge_sets(&self) -> impl Iterator<Item = VSet> + '_ {
        self.edges.iter().map(|&e| VSet(e))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, e: VSet) -> bool {
        self.index.contains(&e.mask())
    }

    /// Edges containing vertex `v`.
    pub fn incident(&self, v: usize) -> &[u64] {
        &self.incidence[v]
    }

    fn check_set(&self, s: VSet) -> Result<()> {
        if !s.fits(self.n) {
            return invalid(format!("{s:?} has vertices outside 0..{}", self.n));
        }
        Ok(())
    }

    /// Edges containing `s`, by scanning the incidence list of its smallest
    /// vertex.
    fn supersets(&self, s: VSet) -> Box<dyn Iterator<Item = u64> + '_> {
        match s.first() {
            None => Box::new(self.edges.iter().copied()),
            Some(v) => Box::new(
                self.incidence[v]
                    .iter()
                    .copied()
                    .filter(move |&e| e & s.mask() == s.mask()),
            ),
        }
    }

    /// Number of edges containing `s`.
    pub fn deg(&self, s: VSet) -> Result<usize> {
        self.check_set(s)?;
        if s.len() > self.k {
            return invalid(format!("|S| = {} exceeds k = {}", s.len(), self.k));
        }
        Ok(self.supersets(s).count())
    }

    /// Number of `(k-|s|)`-sets `T ⊆ r` with `s ∪ T` an edge, i.e. edges
    /// containing `s` whose remaining vertices all lie in `r`.
    pub fn deg_into(&self, s: VSet, r: VSet) -> usize {
        let allowed = (r - s).mask();
        self.supersets(s).filter(|&e| (e & !s.mask()) & !allowed == 0).count()
    }

    /// Non-edges among the `(k-|s|)`-sets of `r \ s` completing `s`.
    pub fn non_deg_into(&self, s: VSet, r: VSet) -> usize {
        let total = binom((r - s).len(), self.k.saturating_sub(s.len())) as usize;
        total - self.deg_into(s, r)
    }

    /// Number of edges inside `s`.
    pub fn edges_within(&self, s: VSet) -> usize {
        self.edges.iter().filter(|&&e| e & !s.mask() == 0).count()
    }

    /// Sub-hypergraph on the same vertex indices keeping only edges inside `s`.
    pub fn induced(&self, s: VSet) -> KGraph {
        let list = self.edges.iter().copied().filter(|&e| e & !s.mask() == 0).collect();
        KGraph::from_checked(self.n, self.k, list)
    }

    pub fn with_edges_added<I: IntoIterator<Item = u64>>(&self, add: I) -> Result<KGraph> {
        KGraph::new(self.n, self.k, self.edges.iter().copied().chain(add))
    }

    pub fn with_edges_removed(&self, remove: &HashSet<u64>) -> KGraph {
        let list = self.edges.iter().copied().filter(|e| !remove.contains(e)).collect();
        KGraph::from_checked(self.n, self.k, list)
    }

    /// Degree profile over all `d`-sets, by enumerating every `d`-set and
    /// counting its supersets.
    pub fn degree_profile_enumerate(&self, d: usize) -> Result<DegreeProfile> {
        self.check_d(d)?;
        let mut hist = BTreeMap::new();
        for s in self.vertices().subsets(d) {
            *hist.entry(self.supersets(s).count()).or_insert(0u64) += 1;
        }
        Ok(DegreeProfile::from_histogram(d, hist))
    }

    /// Degree profile over all `d`-sets, by scattering each edge into its
    /// `C(k, d)` subsets. Sets never hit have degree zero.
    pub fn degree_profile_scatter(&self, d: usize) -> Result<DegreeProfile> {
        self.check_d(d)?;
        let mut counts: HashMap<u64, usize> = HashMap::new();
        for &e in &self.edges {
            for s in VSet(e).subsets(d) {
                *counts.entry(s.mask()).or_insert(0) += 1;
            }
        }
        let mut hist = BTreeMap::new();
        let zero = binom(self.n, d) - counts.len() as u64;
        if zero > 0 {
            hist.insert(0, zero);
        }
        for c in counts.into_values() {
            *hist.entry(c).or_insert(0u64) += 1;
        }
        Ok(DegreeProfile::from_histogram(d, hist))
    }

    /// Degree profile, choosing enumeration for small `C(n, d)` and scattering
    /// otherwise.
    pub fn degree_profile(&self, d: usize) -> Result<DegreeProfile> {
        let subsets = binom(self.n, d);
        let scattered = self.edges.len() as u64 * binom(self.k, d);
        if subsets <= 4096 && subsets <= 4 * scattered.max(1) {
            self.degree_profile_enumerate(d)
        } else {
            self.degree_profile_scatter(d)
        }
    }

    fn check_d(&self, d: usize) -> Result<()> {
        if d > self.k {
            return invalid(format!("d = {d} exceeds k = {}", self.k));
        }
        Ok(())
    }

    /// Minimum codegree `δ_{k-1}`.
    pub fn min_codegree(&self) -> usize {
        self.degree_profile(self.k - 1).map(|p| p.min_deg).expect("k - 1 <= k")
    }

    /// The `(k-|s|)`-graph of edge remainders over the edges containing `s`.
    pub fn link_graph(&self, s: VSet) -> Result<LinkGraph> {
        self.check_set(s)?;
        if s.is_empty() || s.len() >= self.k {
            return invalid(format!(
                "link needs 1 <= |S| <= k-1, got |S| = {} with k = {}",
                s.len(),
                self.k
            ));
        }
        let list = self.supersets(s).map(|e| e & !s.mask()).collect();
        Ok(LinkGraph {
            graph: KGraph::from_checked(self.n, self.k - s.len(), list),
            excluded: s,
        })
    }

    /// `e(X^i Y^{k-i})`: edges with exactly `i` vertices in `x` and `k - i`
    /// in `y`.
    pub fn cross_edge_count(&self, x: VSet, y: VSet, i: usize) -> Result<usize> {
        self.check_set(x)?;
        self.check_set(y)?;
        if !x.is_disjoint(y) {
            return invalid("X and Y overlap");
        }
        if i > self.k {
            return invalid(format!("i = {i} exceeds k = {}", self.k));
        }
        let j = self.k - i;
        Ok(self
            .edges
            .iter()
            .filter(|&&e| (e & x.mask()).count_ones() as usize == i && (e & y.mask()).count_ones() as usize == j)
            .count())
    }

    fn check_rel(&self, l: VSet, x: VSet, y: VSet, i: usize) -> Result<(usize, usize)> {
        self.check_set(l)?;
        if !x.is_disjoint(y) {
            return invalid("X and Y overlap");
        }
        if i > self.k {
            return invalid(format!("i = {i} exceeds k = {}", self.k));
        }
        if !l.is_subset(x | y) {
            return invalid("L is not inside X ∪ Y");
        }
        let l1 = (l & x).len();
        let l2 = (l & y).len();
        if l1 > i || l2 > self.k - i {
            return invalid(format!(
                "L has {l1} vertices in X and {l2} in Y, incompatible with i = {i}"
            ));
        }
        Ok((l1, l2))
    }

    /// `deg(L, X^i Y^{k-i})`: edges of type `X^i Y^{k-i}` containing `l`.
    pub fn rel_deg(&self, l: VSet, x: VSet, y: VSet, i: usize) -> Result<usize> {
        self.check_rel(l, x, y, i)?;
        let j = self.k - i;
        Ok(self
            .supersets(l)
            .filter(|&e| (e & x.mask()).count_ones() as usize == i && (e & y.mask()).count_ones() as usize == j)
            .count())
    }

    /// Complement of [`KGraph::rel_deg`]:
    /// `C(|X|-l1, i-l1) · C(|Y|-l2, k-i-l2) - deg(L, X^i Y^{k-i})`.
    pub fn rel_non_deg(&self, l: VSet, x: VSet, y: VSet, i: usize) -> Result<usize> {
        let (l1, l2) = self.check_rel(l, x, y, i)?;
        let total = binom(x.len() - l1, i - l1) as usize * binom(y.len() - l2, self.k - i - l2) as usize;
        Ok(total - self.rel_deg(l, x, y, i)?)
    }
}

impl DegreeProfile {
    fn from_histogram(d: usize, histogram: BTreeMap<usize, u64>) -> DegreeProfile {
        let min_deg = histogram.iter().find(|(_, &c)| c > 0).map(|(&deg, _)| deg).unwrap_or(0);
        DegreeProfile { d, min_deg, histogram }
    }

    pub fn total(&self) -> u64 {
        self.histogram.values().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h0_381() -> KGraph {
        // A = {0}, all triples meeting A
        let a = VSet::singleton(0);
        KGraph::new(
            8,
            3,
            VSet::full(8).subsets(3).filter(|e| !e.is_disjoint(a)).map(VSet::mask),
        )
        .unwrap()
    }

    #[test]
    fn rejects_malformed_edges() {
        assert!(KGraph::new(5, 3, [0b11]).is_err());
        assert!(KGraph::new(5, 3, [0b1_1000_0001]).is_err());
        assert!(KGraph::new(0, 1, []).is_err());
        assert!(KGraph::new(4, 5, []).is_err());
        assert!(KGraph::from_vertex_lists(5, 3, &[vec![0, 0, 1]]).is_err());
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = KGraph::new(5, 3, [0b111, 0b111, 0b1011]).unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn deg_examples() {
        let k5 = KGraph::complete(5, 3).unwrap();
        assert_eq!(k5.deg(VSet::from_vertices([0, 1])).unwrap(), 3);
        let empty = KGraph::empty(5, 3).unwrap();
        assert_eq!(empty.deg(VSet::from_vertices([2])).unwrap(), 0);
        let h0 = h0_381();
        for s in VSet::range(1, 8).subsets(2) {
            assert_eq!(h0.deg(s).unwrap(), 1);
        }
        assert!(k5.deg(VSet::full(4)).is_err());
    }

    #[test]
    fn codegree_examples() {
        assert_eq!(KGraph::complete(7, 3).unwrap().min_codegree(), 5);
        assert_eq!(h0_381().min_codegree(), 1);
        let a = VSet::from_vertices([0, 1]);
        let ideal = KGraph::new(
            8,
            3,
            VSet::full(8).subsets(3).filter(|e| !e.is_disjoint(a)).map(VSet::mask),
        )
        .unwrap();
        assert_eq!(ideal.min_codegree(), 2);
    }

    #[test]
    fn link_examples() {
        let k5 = KGraph::complete(5, 3).unwrap();
        let link = k5.link_graph(VSet::singleton(0)).unwrap();
        assert_eq!(link.graph.k(), 2);
        assert_eq!(link.graph, KGraph::complete(5, 2).unwrap().induced(VSet::range(1, 5)));
        let h0 = h0_381();
        let link = h0.link_graph(VSet::singleton(0)).unwrap();
        assert_eq!(link.graph.edge_count(), 21);
        assert!(h0.link_graph(VSet::EMPTY).is_err());
        assert!(h0.link_graph(VSet::from_vertices([0, 1, 2])).is_err());
        let empty = KGraph::empty(6, 3).unwrap();
        assert_eq!(empty.link_graph(VSet::singleton(3)).unwrap().graph.edge_count(), 0);
    }

    #[test]
    fn cross_counts() {
        let k5 = KGraph::complete(5, 3).unwrap();
        let x = VSet::singleton(0);
        let y = VSet::range(1, 5);
        assert_eq!(k5.cross_edge_count(x, y, 1).unwrap(), 6);
        assert_eq!(k5.cross_edge_count(x, y, 0).unwrap(), 4);
        assert!(k5.cross_edge_count(x, x, 0).is_err());
        let h0 = h0_381();
        assert_eq!(h0.cross_edge_count(x, VSet::range(1, 8), 0).unwrap(), 0);
    }

    #[test]
    fn relative_degrees() {
        let k5 = KGraph::complete(5, 3).unwrap();
        let x = VSet::singleton(0);
        let y = VSet::range(1, 5);
        let l = VSet::from_vertices([1, 2]);
        assert_eq!(k5.rel_deg(l, x, y, 1).unwrap(), 1);
        assert_eq!(k5.rel_non_deg(l, x, y, 1).unwrap(), 0);
        let empty = KGraph::empty(5, 3).unwrap();
        assert_eq!(empty.rel_deg(l, x, y, 1).unwrap(), 0);
        assert_eq!(empty.rel_non_deg(l, x, y, 1).unwrap(), 1);
        assert_eq!(empty.rel_non_deg(VSet::singleton(1), x, y, 1).unwrap(), 3);
        // L needs more Y-slots than the edge type provides
        assert!(k5.rel_deg(VSet::from_vertices([1, 2, 3]), x, y, 1).is_err());
    }

    #[test]
    fn profiles_agree() {
        let h0 = h0_381();
        for d in 0..=3 {
            let a = h0.degree_profile_enumerate(d).unwrap();
            let b = h0.degree_profile_scatter(d).unwrap();
            assert_eq!(a, b, "d = {d}");
            assert_eq!(a.total(), binom(8, d));
        }
    }
}
