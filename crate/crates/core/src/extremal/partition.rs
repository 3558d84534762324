use crate::constructions::ExtremalPartition;
use crate::graph::KGraph;
use crate::vset::VSet;

/// Sparse side `B` of size `⌊(2(k-ℓ)-1)n / (2(k-ℓ))⌋` by local search.
///
/// Starts from the lowest-degree vertices and applies the swap `u ∈ B`,
/// `v ∉ B` that lowers `e(B)` the most until no swap helps. Returns `None`
/// when the local minimum still has `e(B) > Δ·n^k`.
pub fn find_extremal_partition(h: &KGraph, l: usize, delta: f64) -> Option<ExtremalPartition> {
    let (n, k) = (h.n(), h.k());
    if l == 0 || l >= k {
        return None;
    }
    let size = ExtremalPartition::b_size(n, k, l);
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (h.incident(v).len(), v));
    let mut b = VSet::from_vertices(by_degree[..size].iter().copied());
    let mut e_b = h.edges_within(b) as isize;
    loop {
        let a = h.vertices() - b;
        let mut best: Option<(isize, usize, usize)> = None;
        for u in b {
            let du = h.deg_into(VSet::singleton(u), b) as isize;
            for v in a {
                let d = h.deg_into(VSet::singleton(v), b.without(u)) as isize - du;
                if d < 0 && best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, u, v));
                }
            }
        }
        match best {
            Some((d, u, v)) => {
                b = b.without(u).with(v);
                e_b += d;
            }
            None => break,
        }
    }
    debug_assert_eq!(e_b as usize, h.edges_within(b));
    if e_b as f64 > delta * (n as f64).powi(k as i32) {
        return None;
    }
    ExtremalPartition::from_b(h, l, b).ok()
}
