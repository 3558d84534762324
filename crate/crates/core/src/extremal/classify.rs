use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::constructions::ExtremalPartition;
use crate::extremal::SolverConfig;
use crate::graph::KGraph;
use crate::vset::{binom_f, VSet};

/// `A'` (almost complete towards `B`), `B'` (almost empty towards `B`) and
/// the rest `V₀`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifiedVertices {
    pub a_prime: VSet,
    pub b_prime: VSet,
    pub v0: VSet,
    /// Size bounds that failed; informational only.
    pub diagnostics: Vec<String>,
}

impl ClassifiedVertices {
    pub fn summary(&self) -> Value {
        json!({
            "a_prime": self.a_prime.to_vec(),
            "b_prime": self.b_prime.to_vec(),
            "v0": self.v0.to_vec(),
        })
    }
}

/// With `c = C(|B|, k-1)`: `v ∈ A'` when `deg(v, B) ≥ (1-ε₁)c`, `v ∈ B'`
/// when `deg(v, B) ≤ ε₁c`, otherwise `v ∈ V₀`. A vertex meeting both
/// thresholds (only possible for `ε₁ ≥ 1/2`) goes to `A'`.
pub fn classify_vertices(h: &KGraph, partition: &ExtremalPartition, config: &SolverConfig) -> ClassifiedVertices {
    let k = h.k();
    let b = partition.b;
    let c = binom_f(b.len(), k - 1);
    let (mut a_prime, mut b_prime, mut v0) = (VSet::EMPTY, VSet::EMPTY, VSet::EMPTY);
    for v in h.vertices() {
        let d = h.deg_into(VSet::singleton(v), b) as f64;
        if d >= (1.0 - config.eps1) * c {
            a_prime.insert(v);
        } else if d <= config.eps1 * c {
            b_prime.insert(v);
        } else {
            v0.insert(v);
        }
    }
    let a = partition.a;
    let bound = config.eps2 * b.len() as f64;
    let mut diagnostics = Vec::new();
    for (name, size) in [
        ("|A \\ A'|", (a - a_prime).len()),
        ("|B \\ B'|", (b - b_prime).len()),
        ("|A' \\ A|", (a_prime - a).len()),
        ("|B' \\ B|", (b_prime - b).len()),
    ] {
        if size as f64 > bound {
            diagnostics.push(format!("{name} = {size} exceeds eps2 |B| = {bound:.2}"));
        }
    }
    if v0.len() as f64 > 2.0 * bound {
        diagnostics.push(format!("|V0| = {} exceeds 2 eps2 |B| = {:.2}", v0.len(), 2.0 * bound));
    }
    ClassifiedVertices {
        a_prime,
        b_prime,
        v0,
        diagnostics,
    }
}

/// Typicality of the ℓ-subsets of `B'`: `L` is typical when
/// `deg(L, B) ≤ ε₁·C(|B|, k-ℓ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TypicalityTable {
    l: usize,
    domain: VSet,
    threshold: f64,
    atypical: BTreeSet<u64>,
    pub diagnostics: Vec<String>,
}

impl TypicalityTable {
    pub fn l(&self) -> usize {
        self.l
    }

    /// The set whose ℓ-subsets are classified.
    pub fn domain(&self) -> VSet {
        self.domain
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// True for a typical ℓ-subset of the domain; false for anything else.
    pub fn is_typical(&self, s: VSet) -> bool {
        s.len() == self.l && s.is_subset(self.domain) && !self.atypical.contains(&s.mask())
    }

    /// True when every ℓ-subset of `s` is typical.
    pub fn all_typical(&self, s: VSet) -> bool {
        s.is_subset(self.domain) && s.subsets(self.l).all(|t| !self.atypical.contains(&t.mask()))
    }

    pub fn atypical(&self) -> impl Iterator<Item = VSet> + '_ {
        self.atypical.iter().map(|&m| VSet(m))
    }

    pub fn atypical_count(&self) -> usize {
        self.atypical.len()
    }

    /// Number of classified ℓ-sets.
    pub fn len(&self) -> usize {
        crate::vset::binom(self.domain.len(), self.l) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn summary(&self) -> Value {
        json!({
            "l": self.l,
            "sets": self.len(),
            "atypical": self.atypical.iter().map(|&m| VSet(m).to_vec()).collect::<Vec<_>>(),
            "threshold": self.threshold,
        })
    }
}

pub fn classify_ell_sets(
    h: &KGraph,
    l: usize,
    partition: &ExtremalPartition,
    classified: &ClassifiedVertices,
    config: &SolverConfig,
) -> TypicalityTable {
    let k = h.k();
    let b = partition.b;
    let threshold = config.eps1 * binom_f(b.len(), k - l);
    let atypical = classified
        .b_prime
        .subsets(l)
        .filter(|&s| h.deg_into(s, b) as f64 > threshold)
        .map(VSet::mask)
        .collect();
    let in_b = b.subsets(l).filter(|&s| h.deg_into(s, b) as f64 > threshold).count();
    let bound = config.eps2 * binom_f(b.len(), l);
    let mut diagnostics = Vec::new();
    if in_b as f64 > bound {
        diagnostics.push(format!(
            "{in_b} atypical {l}-sets in B exceed eps2 C(|B|, l) = {bound:.2}"
        ));
    }
    TypicalityTable {
        l,
        domain: classified.b_prime,
        threshold,
        atypical,
        diagnostics,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_ideal_extremal, ExtremalPartition};

    fn cfg(eps1: f64) -> SolverConfig {
        SolverConfig {
            eps1,
            eps2: eps1 * eps1,
            ..SolverConfig::default()
        }
    }

    #[test]
    fn ideal_instance_is_clean() {
        let inst = build_ideal_extremal(3, 1, 12).unwrap();
        let cv = classify_vertices(&inst.graph, &inst.partition, &cfg(0.3));
        assert_eq!(cv.a_prime, inst.partition.a);
        assert_eq!(cv.b_prime, inst.partition.b);
        assert!(cv.v0.is_empty());
        assert!(cv.diagnostics.is_empty());
        let t = classify_ell_sets(&inst.graph, 1, &inst.partition, &cv, &cfg(0.3));
        assert_eq!(t.atypical_count(), 0);
        assert_eq!(t.len(), 9);
    }

    #[test]
    fn halved_vertex_lands_in_v0() {
        let inst = build_ideal_extremal(3, 1, 12).unwrap();
        let b = inst.partition.b;
        // drop every other B-pair from vertex 0's link
        let gone = b
            .subsets(2)
            .enumerate()
            .filter(|(i, _)| i % 2 == 0)
            .map(|(_, s)| s.with(0).mask())
            .collect();
        let h = inst.graph.with_edges_removed(&gone);
        let cv = classify_vertices(&h, &inst.partition, &cfg(0.3));
        assert_eq!(cv.v0, VSet::singleton(0));
    }

    #[test]
    fn complete_graph_is_all_a_prime() {
        let h = KGraph::complete(16, 3).unwrap();
        let p = ExtremalPartition::from_b(&h, 1, VSet::range(4, 16)).unwrap();
        let cv = classify_vertices(&h, &p, &cfg(0.3));
        assert_eq!(cv.a_prime, h.vertices());
        assert!(cv.b_prime.is_empty());
    }

    #[test]
    fn planted_dense_spot_is_atypical() {
        let inst = build_ideal_extremal(5, 2, 12).unwrap();
        let b = inst.partition.b;
        // every B-edge through {2,3}: deg({2,3}, B) = 56 > 0.3 C(10,3) = 36
        let pair = VSet::from_vertices([2, 3]);
        let extra: Vec<u64> = (b - pair).subsets(3).map(|s| (s | pair).mask()).collect();
        let h = inst.graph.with_edges_added(extra).unwrap();
        let cv = classify_vertices(&h, &inst.partition, &cfg(0.3));
        assert_eq!(cv.b_prime, b);
        let t = classify_ell_sets(&h, 2, &inst.partition, &cv, &cfg(0.3));
        assert!(!t.is_typical(pair));
        assert_eq!(t.atypical_count(), 1);
        assert!(t.is_typical(VSet::from_vertices([2, 4])));
    }

    #[test]
    fn eps_one_makes_everything_typical() {
        let h = KGraph::complete(8, 3).unwrap();
        let p = ExtremalPartition::from_b(&h, 1, VSet::range(2, 8)).unwrap();
        let cv = ClassifiedVertices {
            a_prime: VSet::range(0, 2),
            b_prime: VSet::range(2, 8),
            v0: VSet::EMPTY,
            diagnostics: Vec::new(),
        };
        let t = classify_ell_sets(&h, 1, &p, &cv, &cfg(1.0));
        assert_eq!(t.atypical_count(), 0);
    }
}
