//! Short path pieces: connectors, one-edge extensions, length-two paths
//! through a given vertex and single `B'`-edges with typical ends.

use crate::extremal::{ClassifiedVertices, TypicalityTable};
use crate::graph::KGraph;
use crate::paths::EllPath;
use crate::vset::VSet;

/// Sets in lexicographic order of their sorted vertex lists.
pub(crate) fn lex_sorted(mut sets: Vec<VSet>) -> Vec<VSet> {
    sets.sort_by_cached_key(|s| s.to_vec());
    sets
}

/// Order of a two-edge ℓ-path whose edges are `first ∪ shared` and
/// `shared ∪ second`, with the given ends inside `first` and `second`.
fn two_edge_order(start: VSet, first: VSet, shared: &[usize], second: VSet, end: VSet) -> Vec<usize> {
    let mut order = start.to_vec();
    order.extend((first - start).iter());
    order.extend_from_slice(shared);
    order.extend((second - end).iter());
    order.extend(end.iter());
    order
}

/// Length-two ℓ-path with ends `l1`, `l2` through one vertex `a ∈ A'` and
/// `2k-3ℓ-1` vertices of `B'`, all outside `forbidden`.
///
/// For each `a`, lowest first, the `(k-ℓ-1)`-sets `C₁, C₂ ⊆ B'` with
/// `l1 ∪ {a} ∪ C₁` and `l2 ∪ {a} ∪ C₂` edges are listed, and the first pair
/// with `|C₁ ∩ C₂| = ℓ-1` is used; the two edges then share `{a} ∪ (C₁∩C₂)`.
pub fn connect(
    h: &KGraph,
    l1: VSet,
    l2: VSet,
    forbidden: VSet,
    classified: &ClassifiedVertices,
    table: &TypicalityTable,
) -> Option<EllPath> {
    let (k, l) = (h.k(), table.l());
    if l1.len() != l || l2.len() != l || !l1.is_disjoint(l2) {
        return None;
    }
    let blocked = forbidden | l1 | l2;
    let pool = classified.b_prime - blocked;
    let r = k - l - 1;
    let nbrs =
        |end: VSet, a: usize| -> Vec<VSet> { pool.subsets(r).filter(|&c| h.contains(end | c.with(a))).collect() };
    for a in classified.a_prime - blocked {
        let n1 = nbrs(l1, a);
        if n1.is_empty() {
            continue;
        }
        let n2 = nbrs(l2, a);
        for &c1 in &n1 {
            if let Some(&c2) = n2.iter().find(|&&c2| (c1 & c2).len() == l - 1) {
                let common = c1 & c2;
                let mut shared = vec![a];
                shared.extend(common.iter());
                let order = two_edge_order(l1, l1 | (c1 - common), &shared, (c2 - common) | l2, l2);
                return EllPath::new(k, l, order).ok();
            }
        }
    }
    None
}

/// An `A'B'^{k-ℓ-1}`-set `C` outside `forbidden ∪ L` with `L ∪ C` an edge
/// and every ℓ-subset of `C ∩ B'` typical.
pub fn extend(
    h: &KGraph,
    end: VSet,
    forbidden: VSet,
    classified: &ClassifiedVertices,
    table: &TypicalityTable,
) -> Option<VSet> {
    let (k, l) = (h.k(), table.l());
    let blocked = forbidden | end;
    let pool = classified.b_prime - blocked;
    for a in classified.a_prime - blocked {
        let hit = pool
            .subsets(k - l - 1)
            .find(|&c| table.all_typical(c) && h.contains(end | c.with(a)));
        if let Some(c) = hit {
            return Some(c.with(a));
        }
    }
    None
}

/// Length-two ℓ-path whose edges share `x` and `ℓ-1` further vertices,
/// built from two edges `e₁, e₂` of the link of `x` inside `pool` with
/// `|e₁ ∩ e₂| = ℓ-1` and no atypical ℓ-subset. Both ends lie in `pool`.
pub fn cover_vertex(h: &KGraph, x: usize, pool: VSet, table: &TypicalityTable) -> Option<EllPath> {
    let (k, l) = (h.k(), table.l());
    let pool = pool.without(x);
    let link: Vec<VSet> = lex_sorted(
        h.incident(x)
            .iter()
            .map(|&e| VSet(e).without(x))
            .filter(|&e| e.is_subset(pool) && table.all_typical(e))
            .collect(),
    );
    for (i, &e1) in link.iter().enumerate() {
        for &e2 in &link[i + 1..] {
            if (e1 & e2).len() != l - 1 {
                continue;
            }
            let common = e1 & e2;
            let (first, second) = (e1 - common, e2 - common);
            let start = first.take_lowest(l);
            let end = VSet::from_vertices(second.to_vec().into_iter().rev().take(l));
            let mut shared = vec![x];
            shared.extend(common.iter());
            let order = two_edge_order(start, first, &shared, second, end);
            return EllPath::new(k, l, order).ok();
        }
    }
    None
}

/// Up to `count` disjoint edges inside `pool`, each with two disjoint
/// typical ℓ-sets, as one-edge paths ending in those sets. Greedy in
/// lexicographic order; `None` when fewer than `count` are found.
pub(crate) fn b_edge_paths(h: &KGraph, pool: VSet, table: &TypicalityTable, count: usize) -> Option<Vec<EllPath>> {
    let (k, l) = (h.k(), table.l());
    let mut out = Vec::new();
    let mut used = VSet::EMPTY;
    let inside = lex_sorted(h.edge_sets().filter(|e| e.is_subset(pool)).collect());
    for e in inside {
        if out.len() == count {
            break;
        }
        if !e.is_disjoint(used) {
            continue;
        }
        let ends = e
            .subsets(l)
            .filter(|&s| table.is_typical(s))
            .find_map(|s| (e - s).subsets(l).find(|&t| table.is_typical(t)).map(|t| (s, t)));
        if let Some((s, t)) = ends {
            let mut order = s.to_vec();
            order.extend((e - s - t).iter());
            order.extend(t.iter());
            out.push(EllPath::new(k, l, order).ok()?);
            used = used | e;
        }
    }
    (out.len() == count).then_some(out)
}
