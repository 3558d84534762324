//! Instance generators: the space barrier, ideal extremal instances and
//! their perturbations, intersecting stars, and random instances.
//!
//! All randomness comes from [`crate::rng::seeded`].

use std::collections::HashSet;

use rand::seq::{index, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::KGraph;
use crate::paths::PartitionedKGraph;
use crate::rng::seeded;
use crate::vset::{binom, VSet};

/// A split `V = A ∪ B` with `|B| = ⌊(2(k-ℓ)-1)n / (2(k-ℓ))⌋`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalPartition {
    pub a: VSet,
    pub b: VSet,
    pub e_b: usize,
    /// `e(B) / n^k`, the smallest `Δ` this split witnesses.
    pub delta: f64,
}

impl ExtremalPartition {
    pub fn b_size(n: usize, k: usize, l: usize) -> usize {
        let d = 2 * (k - l);
        (d - 1) * n / d
    }

    /// Partition with the given `B`, checking its size.
    pub fn from_b(h: &KGraph, l: usize, b: VSet) -> Result<ExtremalPartition> {
        let (n, k) = (h.n(), h.k());
        if b.len() != Self::b_size(n, k, l) || !b.fits(n) {
            return invalid(format!(
                "|B| = {} but the extremal split needs {}",
                b.len(),
                Self::b_size(n, k, l)
            ));
        }
        let e_b = h.edges_within(b);
        Ok(ExtremalPartition {
            a: h.vertices() - b,
            b,
            e_b,
            delta: e_b as f64 / (n as f64).powi(k as i32),
        })
    }
}

/// A generated graph with its extremal split.
#[derive(Clone, Debug)]
pub struct ExtremalInstance {
    pub graph: KGraph,
    pub partition: ExtremalPartition,
    pub ell: usize,
    /// The vertices every edge of the unperturbed construction meets.
    pub core: VSet,
}

fn check_kl(k: usize, l: usize, n: usize) -> Result<()> {
    if l == 0 || l >= k {
        return invalid(format!("need 1 <= l < k, got k = {k}, l = {l}"));
    }
    if k > n || n > 64 {
        return invalid(format!("need k <= n <= 64, got k = {k}, n = {n}"));
    }
    Ok(())
}

fn meeting(n: usize, k: usize, a: VSet) -> Result<KGraph> {
    KGraph::new(
        n,
        k,
        VSet::full(n).subsets(k).filter(|e| !e.is_disjoint(a)).map(VSet::mask),
    )
}

/// Size of the small side of the space barrier:
/// `⌈n / (⌈k/(k-ℓ)⌉(k-ℓ))⌉ - 1`.
pub fn h0_a_size(k: usize, l: usize, n: usize) -> usize {
    let step = k - l;
    let per = k.div_ceil(step) * step;
    n.div_ceil(per) - 1
}

/// Space barrier: all k-sets meeting `A = {0, .., |A|-1}`. Its codegree is
/// `|A|`, and since each edge of an ℓ-cycle meets `A` while every vertex of
/// `A` lies in at most `⌈k/(k-ℓ)⌉` of the `n/(k-ℓ)` edges, it has no
/// Hamilton ℓ-cycle.
pub fn build_h0(k: usize, l: usize, n: usize) -> Result<ExtremalInstance> {
    check_kl(k, l, n)?;
    let a_size = h0_a_size(k, l, n);
    if a_size == 0 {
        log::warn!("space barrier with k = {k}, l = {l}, n = {n} has an empty side and no edges");
    }
    let core = VSet::full(a_size);
    let graph = meeting(n, k, core)?;
    let b = VSet::range(n - ExtremalPartition::b_size(n, k, l), n);
    let partition = ExtremalPartition::from_b(&graph, l, b)?;
    Ok(ExtremalInstance {
        graph,
        partition,
        ell: l,
        core,
    })
}

/// All k-sets meeting `A = {0, .., n/(2(k-ℓ)) - 1}`; needs `2(k-ℓ) | n`.
pub fn build_ideal_extremal(k: usize, l: usize, n: usize) -> Result<ExtremalInstance> {
    check_kl(k, l, n)?;
    let d = 2 * (k - l);
    if !n.is_multiple_of(d) {
        return invalid(format!(
            "the ideal instance needs n/(k-l) even, got n = {n}, k - l = {}",
            k - l
        ));
    }
    let core = VSet::full(n / d);
    let graph = meeting(n, k, core)?;
    let partition = ExtremalPartition::from_b(&graph, l, VSet::range(n / d, n))?;
    Ok(ExtremalInstance {
        graph,
        partition,
        ell: l,
        core,
    })
}

/// All k-sets meeting `A = {0, .., ⌈n/(2(k-ℓ))⌉ - 1}`, which puts every
/// `(k-1)`-set of `B` exactly at the codegree floor. Needs `(k-ℓ) | n`; for
/// even `n/(k-ℓ)` this is [`build_ideal_extremal`].
pub fn build_threshold_extremal(k: usize, l: usize, n: usize) -> Result<ExtremalInstance> {
    check_kl(k, l, n)?;
    if !n.is_multiple_of(k - l) {
        return invalid(format!("k - l = {} does not divide n = {n}", k - l));
    }
    let a_size = codegree_floor(k, l, n);
    let core = VSet::full(a_size);
    let graph = meeting(n, k, core)?;
    let partition = ExtremalPartition::from_b(&graph, l, VSet::range(a_size, n))?;
    Ok(ExtremalInstance {
        graph,
        partition,
        ell: l,
        core,
    })
}

/// Result of [`perturb_extremal`], with the counts actually achieved.
#[derive(Clone, Debug)]
pub struct Perturbation {
    pub instance: ExtremalInstance,
    pub added: usize,
    pub removed: usize,
    /// Removed edges put back to restore the codegree floor.
    pub restored: usize,
    pub min_codegree: usize,
}

/// Codegree floor `⌈n / (2(k-ℓ))⌉`.
pub fn codegree_floor(k: usize, l: usize, n: usize) -> usize {
    n.div_ceil(2 * (k - l))
}

fn codeg(edges: &HashSet<u64>, s: VSet, n: usize) -> usize {
    (VSet::full(n) - s)
        .iter()
        .filter(|&v| edges.contains(&s.with(v).mask()))
        .count()
}

/// Add up to `add` random non-edges inside `B` and remove up to `remove`
/// random edges meeting `A`, then put removed edges back, most recently
/// removed first, while some `(k-1)`-set is below the codegree floor.
pub fn perturb_extremal(base: &ExtremalInstance, seed: u64, add: usize, remove: usize) -> Result<Perturbation> {
    let g = &base.graph;
    let (n, k, l) = (g.n(), g.k(), base.ell);
    let mut rng = seeded(seed);
    let mut edges: HashSet<u64> = g.edges().iter().copied().collect();

    let b_list = base.partition.b.to_vec();
    let mut added = Vec::new();
    let room = binom(b_list.len(), k) as usize - g.edges_within(base.partition.b);
    let want = add.min(room);
    let mut attempts = 0;
    while added.len() < want && attempts < 1000 * (want + 1) {
        attempts += 1;
        let e = VSet::from_vertices(b_list.choose_multiple(&mut rng, k).copied()).mask();
        if edges.insert(e) {
            added.push(e);
        }
    }

    let meets_a: Vec<u64> = g
        .edges()
        .iter()
        .copied()
        .filter(|&e| e & base.partition.a.mask() != 0)
        .collect();
    let removed: Vec<u64> = meets_a
        .choose_multiple(&mut rng, remove.min(meets_a.len()))
        .copied()
        .collect();
    for e in &removed {
        edges.remove(e);
    }

    let floor = codegree_floor(k, l, n);
    let mut restored = 0;
    for &e in removed.iter().rev() {
        let deficient = VSet(e).subsets(k - 1).any(|s| codeg(&edges, s, n) < floor);
        if deficient {
            edges.insert(e);
            restored += 1;
        }
    }

    let graph = KGraph::new(n, k, edges)?;
    let partition = ExtremalPartition::from_b(&graph, l, base.partition.b)?;
    let min_codegree = graph.min_codegree();
    if min_codegree < floor {
        log::warn!("perturbed instance has codegree {min_codegree} below the floor {floor}");
    }
    Ok(Perturbation {
        added: added.len(),
        removed: removed.len() - restored,
        restored,
        min_codegree,
        instance: ExtremalInstance {
            graph,
            partition,
            ell: l,
            core: base.core,
        },
    })
}

/// All k-sets containing `{0, .., b}`. Any two edges share at least `b+1`
/// vertices, so the graph has no `Y_{k,b}`; it has `C(n-b-1, k-b-1)` edges.
pub fn build_y_free_star(n: usize, k: usize, b: usize) -> Result<KGraph> {
    if b >= k || k > n || n > 64 {
        return invalid(format!("need b < k <= n <= 64, got n = {n}, k = {k}, b = {b}"));
    }
    if n < 2 * k - b {
        return invalid(format!("need n >= 2k - b = {}, got n = {n}", 2 * k - b));
    }
    if k - b - 1 == 0 {
        log::warn!("star with b = k - 1 is a single edge");
    }
    let center = VSet::full(b + 1);
    KGraph::new(
        n,
        k,
        (VSet::full(n) - center).subsets(k - b - 1).map(|r| (r | center).mask()),
    )
}

/// Each k-set independently with probability `p`.
pub fn random_k_graph(n: usize, k: usize, p: f64, seed: u64) -> Result<KGraph> {
    if !(0.0..=1.0).contains(&p) {
        return invalid(format!("p = {p} outside [0, 1]"));
    }
    let mut rng = seeded(seed);
    let edges: Vec<u64> = VSet::full(n)
        .subsets(k)
        .filter(|_| rng.gen_bool(p))
        .map(VSet::mask)
        .collect();
    KGraph::new(n, k, edges)
}

/// A random instance accepted by [`random_above_threshold`].
#[derive(Clone, Debug)]
pub struct RandomInstance {
    pub graph: KGraph,
    pub p: f64,
    /// Samples drawn, including the accepted one.
    pub attempts: usize,
    pub floor: usize,
}

/// Codegree floor `⌈(1/(2(k-ℓ)) + γ)n⌉`.
pub fn random_floor(k: usize, l: usize, n: usize, gamma: f64) -> usize {
    let x = (1.0 / (2.0 * (k - l) as f64) + gamma) * n as f64;
    (x - 1e-9).ceil().max(0.0) as usize
}

/// Default edge probability: the floor plus three standard deviations,
/// relative to the `n-k+1` possible completions of a `(k-1)`-set.
pub fn default_edge_probability(k: usize, n: usize, floor: usize) -> f64 {
    let f = floor as f64;
    ((f + 3.0 * f.sqrt() + 1.0) / (n - k + 1) as f64).min(1.0)
}

/// Binomial random k-graph resampled until its codegree reaches
/// `⌈(1/(2(k-ℓ)) + γ)n⌉`; at most 50 samples, drawn from one seeded stream.
pub fn random_above_threshold(
    k: usize,
    l: usize,
    n: usize,
    gamma: f64,
    p: Option<f64>,
    seed: u64,
) -> Result<RandomInstance> {
    check_kl(k, l, n)?;
    let floor = random_floor(k, l, n, gamma);
    let p = p.unwrap_or_else(|| default_edge_probability(k, n, floor));
    if !(0.0..=1.0).contains(&p) {
        return invalid(format!("p = {p} outside [0, 1]"));
    }
    let mut rng = seeded(seed);
    for attempt in 1..=50 {
        let edges: Vec<u64> = VSet::full(n)
            .subsets(k)
            .filter(|_| rng.gen_bool(p))
            .map(VSet::mask)
            .collect();
        let graph = KGraph::new(n, k, edges)?;
        if graph.min_codegree() >= floor {
            return Ok(RandomInstance {
                graph,
                p,
                attempts: attempt,
                floor,
            });
        }
    }
    Err(Error::Exhausted(format!(
        "50 samples with p = {p} all had codegree below {floor}"
    )))
}

/// k-partite graph with parts `{jm, .., (j+1)m - 1}` and exactly
/// `⌈d m^k⌉` crossing edges chosen uniformly.
pub fn random_k_partite(k: usize, m: usize, density: f64, seed: u64) -> Result<PartitionedKGraph> {
    if k * m > 64 || m == 0 || k == 0 {
        return invalid(format!("need 1 <= k, 1 <= m, km <= 64, got k = {k}, m = {m}"));
    }
    if !(0.0..=1.0).contains(&density) {
        return invalid(format!("density {density} outside [0, 1]"));
    }
    let total = m.pow(k as u32);
    let count = ((density * total as f64) - 1e-9).ceil().max(0.0) as usize;
    let mut rng = seeded(seed);
    let picks = index::sample(&mut rng, total, count.min(total));
    let edges = picks.into_iter().map(|mut x| {
        let mut e = 0u64;
        for j in 0..k {
            e |= 1u64 << (j * m + x % m);
            x /= m;
        }
        e
    });
    let graph = KGraph::new(k * m, k, edges)?;
    let parts = (0..k).map(|j| VSet::range(j * m, (j + 1) * m)).collect();
    PartitionedKGraph::new(graph, parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h0_sizes_and_codegree() {
        assert_eq!(h0_a_size(3, 1, 8), 1);
        assert_eq!(h0_a_size(5, 2, 9), 1);
        assert_eq!(h0_a_size(3, 1, 12), 2);
        let h = build_h0(3, 1, 12).unwrap();
        assert_eq!(h.graph.min_codegree(), 2);
        assert_eq!(h.core.len(), 2);
        let h = build_h0(3, 1, 8).unwrap();
        assert_eq!(h.graph.edge_count(), 21);
        assert_eq!(h.partition.b.len(), 6);
        assert_eq!(h.partition.e_b, 0);
    }

    #[test]
    fn ideal_instances() {
        for (k, l, n) in [(3, 1, 8), (4, 1, 12), (5, 2, 12)] {
            let h = build_ideal_extremal(k, l, n).unwrap();
            assert_eq!(h.core.len(), 2);
            assert_eq!(h.graph.min_codegree(), 2);
            assert_eq!(h.partition.e_b, 0);
            assert_eq!(h.partition.a, h.core);
        }
        assert!(build_ideal_extremal(3, 1, 9).is_err());
        assert!(build_ideal_extremal(3, 1, 10).is_err());
    }

    #[test]
    fn perturbation_counts() {
        let base = build_ideal_extremal(3, 1, 8).unwrap();
        let same = perturb_extremal(&base, 1, 0, 0).unwrap();
        assert_eq!(same.instance.graph, base.graph);
        let p = perturb_extremal(&base, 1, 3, 0).unwrap();
        assert_eq!(p.added, 3);
        assert_eq!(p.instance.partition.e_b, 3);
        assert!(p.instance.partition.delta <= 0.01);
    }

    #[test]
    fn perturbation_keeps_codegree_floor() {
        let base = build_ideal_extremal(3, 1, 12).unwrap();
        for seed in 0..20 {
            let p = perturb_extremal(&base, seed, 3, 10).unwrap();
            assert!(p.min_codegree >= 3, "seed {seed}");
            assert!(p.instance.partition.e_b <= 3);
        }
    }

    #[test]
    fn perturbation_is_reproducible() {
        let base = build_ideal_extremal(3, 1, 12).unwrap();
        let a = perturb_extremal(&base, 7, 3, 3).unwrap();
        let b = perturb_extremal(&base, 7, 3, 3).unwrap();
        assert_eq!(a.instance.graph, b.instance.graph);
    }

    #[test]
    fn stars() {
        assert_eq!(build_y_free_star(5, 3, 1).unwrap().edge_count(), 3);
        assert_eq!(build_y_free_star(8, 3, 1).unwrap().edge_count(), 6);
        assert_eq!(build_y_free_star(7, 3, 2).unwrap().edge_count(), 1);
        assert!(build_y_free_star(4, 3, 1).is_err());
    }

    #[test]
    fn random_threshold_examples() {
        let r = random_above_threshold(3, 1, 12, 0.05, Some(1.0), 3).unwrap();
        assert_eq!(r.graph.edge_count(), 220);
        let r = random_above_threshold(3, 1, 12, 0.05, Some(0.9), 3).unwrap();
        assert_eq!(r.floor, 4);
        assert!(r.graph.min_codegree() >= 4);
        assert!(matches!(
            random_above_threshold(3, 1, 12, 0.05, Some(0.0), 3),
            Err(Error::Exhausted(_))
        ));
        assert_eq!(random_floor(3, 1, 20, 0.1), 7);
    }

    #[test]
    fn k_partite_edge_count() {
        let g = random_k_partite(3, 10, 0.5, 11).unwrap();
        assert_eq!(g.base.edge_count(), 500);
        assert!(g.is_k_partite());
    }
}
