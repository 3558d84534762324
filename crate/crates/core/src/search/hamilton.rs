//! Exact Hamilton ℓ-cycle and ℓ-path search.

use crate::error::{invalid, Result};
use crate::graph::KGraph;
use crate::paths::{validate_cycle, validate_path, EllCycle, EllPath};
use crate::search::{OrderProblem, SearchBudget, SearchOutcome};
use crate::vset::VSet;

fn check_kl(h: &KGraph, l: usize) -> Result<()> {
    if l == 0 || l >= h.k() {
        return invalid(format!("need 1 <= l < k, got k = {}, l = {l}", h.k()));
    }
    Ok(())
}

/// Block offsets for the lowest vertex, one per orbit of the reflection
/// `p -> (ℓ-1-p) mod (k-ℓ)`.
fn anchor_offsets(k: usize, l: usize) -> Vec<usize> {
    let step = k - l;
    (0..step)
        .filter(|&p| p <= (l as isize - 1 - p as isize).rem_euclid(step as isize) as usize)
        .collect()
}

/// Cyclic windows of an ℓ-cycle on `n` positions.
pub(crate) fn cycle_windows(n: usize, k: usize, l: usize) -> Vec<Vec<usize>> {
    let step = k - l;
    (0..n / step)
        .map(|j| (0..k).map(|i| (j * step + i) % n).collect())
        .collect()
}

/// Windows of an ℓ-path on `t` positions.
pub(crate) fn path_windows(t: usize, k: usize, l: usize) -> Vec<Vec<usize>> {
    let step = k - l;
    if t < k {
        return Vec::new();
    }
    (0..(t - l) / step)
        .map(|j| (j * step..j * step + k).collect())
        .collect()
}

/// Exact search for a Hamilton ℓ-cycle.
///
/// The lowest vertex is pinned to the first block, at one offset per
/// reflection class, which removes the rotations and reflections of each
/// cycle from the search.
pub fn find_hamilton_ell_cycle(h: &KGraph, l: usize, budget: &SearchBudget) -> Result<SearchOutcome<EllCycle>> {
    check_kl(h, l)?;
    let (n, k) = (h.n(), h.k());
    if n % (k - l) != 0 {
        return invalid(format!("k - l = {} does not divide n = {n}", k - l));
    }
    if n < k {
        return Ok(SearchOutcome::NotFound);
    }
    let windows = cycle_windows(n, k, l);
    let all = VSet::full(n);
    let mut exhausted = false;
    for p in anchor_offsets(k, l) {
        let allowed: Vec<VSet> = (0..n)
            .map(|q| if q == p { VSet::singleton(0) } else { all.without(0) })
            .collect();
        let problem = OrderProblem::new(h, windows.clone(), allowed)?;
        match problem.solve(budget) {
            SearchOutcome::Found(order) => {
                let c = EllCycle::new(k, l, order)?;
                assert!(validate_cycle(h, &c)?, "search returned an invalid cycle");
                return Ok(SearchOutcome::Found(c));
            }
            SearchOutcome::NotFound => {}
            SearchOutcome::Exhausted => exhausted = true,
        }
    }
    Ok(if exhausted {
        SearchOutcome::Exhausted
    } else {
        SearchOutcome::NotFound
    })
}

/// Exact search for a Hamilton ℓ-path, optionally with prescribed ends: the
/// first `ℓ` vertices form `ends.0` and the last `ℓ` form `ends.1`.
pub fn find_hamilton_ell_path(
    h: &KGraph,
    l: usize,
    ends: Option<(VSet, VSet)>,
    budget: &SearchBudget,
) -> Result<SearchOutcome<EllPath>> {
    check_kl(h, l)?;
    let (n, k) = (h.n(), h.k());
    if n < l || !(n - l).is_multiple_of(k - l) {
        return invalid(format!(
            "k - l = {} does not divide n - l = {}",
            k - l,
            n as isize - l as isize
        ));
    }
    let all = VSet::full(n);
    let mut allowed = vec![all; n];
    if let Some((a, b)) = ends {
        if a.len() != l || b.len() != l || !a.is_disjoint(b) || !(a | b).fits(n) {
            return invalid("ends must be disjoint l-sets of the host");
        }
        if n == l {
            return invalid("a path on l vertices has a single end");
        }
        // when an end lies inside a single window its internal order is free
        let free_order = l <= k - l;
        let (a_list, b_list) = (a.to_vec(), b.to_vec());
        for q in 0..n {
            allowed[q] = if q < l {
                if free_order {
                    VSet::singleton(a_list[q])
                } else {
                    a
                }
            } else if q >= n - l {
                if free_order {
                    VSet::singleton(b_list[q - (n - l)])
                } else {
                    b
                }
            } else {
                all - a - b
            };
        }
    }
    let problem = OrderProblem::new(h, path_windows(n, k, l), allowed)?;
    Ok(match problem.solve(budget) {
        SearchOutcome::Found(order) => {
            let p = EllPath::new(k, l, order)?;
            assert!(validate_path(h, &p)?, "search returned an invalid path");
            SearchOutcome::Found(p)
        }
        SearchOutcome::NotFound => SearchOutcome::NotFound,
        SearchOutcome::Exhausted => SearchOutcome::Exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn meeting(n: usize, k: usize, a: VSet) -> KGraph {
        KGraph::new(
            n,
            k,
            VSet::full(n).subsets(k).filter(|e| !e.is_disjoint(a)).map(VSet::mask),
        )
        .unwrap()
    }

    #[test]
    fn anchor_offsets_cover_reflection_classes() {
        assert_eq!(anchor_offsets(3, 1), vec![0, 1]);
        assert_eq!(anchor_offsets(3, 2), vec![0]);
        // k = 5, l = 2: offsets 0,1,2 with 0 <-> 1 and 2 fixed
        assert_eq!(anchor_offsets(5, 2), vec![0, 2]);
        assert_eq!(anchor_offsets(4, 1), vec![0, 1]);
    }

    #[test]
    fn complete_graph_has_cycle() {
        let h = KGraph::complete(8, 3).unwrap();
        let c = find_hamilton_ell_cycle(&h, 1, &SearchBudget::unlimited()).unwrap();
        assert_eq!(c.found().unwrap().edge_count(), 4);
    }

    #[test]
    fn space_barrier_small_cases() {
        let b = SearchBudget::unlimited();
        let h = meeting(8, 3, VSet::singleton(0));
        assert!(find_hamilton_ell_cycle(&h, 1, &b).unwrap().is_not_found());
        let h = meeting(9, 5, VSet::singleton(0));
        assert!(find_hamilton_ell_cycle(&h, 2, &b).unwrap().is_not_found());
        let ideal = meeting(8, 3, VSet::range(0, 2));
        assert!(find_hamilton_ell_cycle(&ideal, 1, &b).unwrap().is_found());
    }

    #[test]
    fn divisibility_is_checked() {
        let h = KGraph::complete(7, 3).unwrap();
        assert!(find_hamilton_ell_cycle(&h, 1, &SearchBudget::unlimited()).is_err());
        assert!(find_hamilton_ell_path(&h, 1, None, &SearchBudget::unlimited()).is_ok());
        let h8 = KGraph::complete(8, 3).unwrap();
        assert!(find_hamilton_ell_path(&h8, 1, None, &SearchBudget::unlimited()).is_err());
    }

    #[test]
    fn path_with_ends() {
        let b = SearchBudget::unlimited();
        let h = KGraph::complete(7, 3).unwrap();
        let ends = (VSet::singleton(0), VSet::singleton(6));
        let p = find_hamilton_ell_path(&h, 1, Some(ends), &b).unwrap().found().unwrap();
        assert_eq!(p.start(), ends.0);
        assert_eq!(p.end(), ends.1);
        // two disjoint K_4^(3) on 0..4 and 4..8 have no crossing edge; n = 8 with l = 2
        let cliques = KGraph::new(
            8,
            3,
            VSet::range(0, 4)
                .subsets(3)
                .chain(VSet::range(4, 8).subsets(3))
                .map(VSet::mask),
        )
        .unwrap();
        let ends = (VSet::from_vertices([0, 1]), VSet::from_vertices([4, 5]));
        assert!(find_hamilton_ell_path(&cliques, 2, Some(ends), &b)
            .unwrap()
            .is_not_found());
    }

    #[test]
    fn ideal_minus_b_vertex_has_path_between_b_ends() {
        // ideal (3,1,8) is A = {0,1}; dropping vertex 7 leaves 7 vertices
        let h = meeting(7, 3, VSet::range(0, 2));
        let ends = (VSet::singleton(2), VSet::singleton(3));
        let b = SearchBudget::unlimited();
        let p = find_hamilton_ell_path(&h, 1, Some(ends), &b).unwrap().found().unwrap();
        assert!(validate_path(&h, &p).unwrap());
    }

    #[test]
    fn parallel_agrees_with_sequential() {
        let b = SearchBudget::unlimited();
        let bp = SearchBudget::unlimited().with_parallel(true);
        for a in 1..=2 {
            let h = meeting(8, 3, VSet::range(0, a));
            let s = find_hamilton_ell_cycle(&h, 1, &b).unwrap().is_found();
            let p = find_hamilton_ell_cycle(&h, 1, &bp).unwrap().is_found();
            assert_eq!(s, p);
        }
    }
}
