//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use lcycle::{KGraph, VSet};

/// Every permutation of `0..n`, in lexicographic order, until `visit`
/// returns true.
pub fn any_permutation(n: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    fn go(perm: &mut Vec<usize>, used: &mut [bool], visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if perm.len() == used.len() {
            return visit(perm);
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                perm.push(v);
                let hit = go(perm, used, visit);
                perm.pop();
                used[v] = false;
                if hit {
                    return true;
                }
            }
        }
        false
    }
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut visit)
}

/// Cyclic windows `{j(k-ℓ), .., j(k-ℓ)+k-1}` of an order, taken mod `n`.
pub fn cyclic_windows(order: &[usize], k: usize, l: usize) -> Vec<VSet> {
    let n = order.len();
    (0..n / (k - l))
        .map(|j| VSet::from_vertices((0..k).map(|i| order[(j * (k - l) + i) % n])))
        .collect()
}

/// Hamilton ℓ-cycle by trying every vertex order.
pub fn naive_hamilton_cycle(h: &KGraph, l: usize) -> Option<Vec<usize>> {
    let (n, k) = (h.n(), h.k());
    if n % (k - l) != 0 || n < k {
        return None;
    }
    let mut found = None;
    any_permutation(n, |p| {
        let ok = cyclic_windows(p, k, l).into_iter().all(|w| h.contains(w));
        if ok {
            found = Some(p.to_vec());
        }
        ok
    });
    found
}

/// Largest matching by trying every injection of the left side.
pub fn brute_matching_size(adj: &[Vec<usize>], right: usize) -> usize {
    fn go(i: usize, adj: &[Vec<usize>], taken: &mut [bool]) -> usize {
        if i == adj.len() {
            return 0;
        }
        let mut best = go(i + 1, adj, taken);
        for &r in &adj[i] {
            if !taken[r] {
                taken[r] = true;
                best = best.max(1 + go(i + 1, adj, taken));
                taken[r] = false;
            }
        }
        best
    }
    go(0, adj, &mut vec![false; right])
}

/// Codegree of every `(k-1)`-set, counted edge by edge.
pub fn naive_min_codegree(h: &KGraph) -> usize {
    let (n, k) = (h.n(), h.k());
    VSet::full(n)
        .subsets(k - 1)
        .map(|s| (VSet::full(n) - s).iter().filter(|&v| h.contains(s.with(v))).count())
        .min()
        .unwrap_or(0)
}
