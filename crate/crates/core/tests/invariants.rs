mod common;

use lcycle::constructions::{build_ideal_extremal, perturb_extremal, random_k_graph};
use lcycle::extremal::{
    classify_ell_sets, classify_vertices, connect, find_extremal_partition, run_pipeline, PipelineOutcome, SolverConfig,
};
use lcycle::io::{from_binary, from_json, to_binary, to_json};
use lcycle::paths::{validate_cycle, validate_path};
use lcycle::search::{find_hamilton_ell_cycle, max_bipartite_matching, max_y_tiling};
use lcycle::vset::binom_f;
use lcycle::{KGraph, SearchBudget, SearchOutcome, VSet};
use proptest::prelude::*;

fn small_graph() -> impl Strategy<Value = KGraph> {
    (3usize..=4, 5usize..=8, 0.2f64..0.95, any::<u64>())
        .prop_filter("k < n", |(k, n, _, _)| k < n)
        .prop_map(|(k, n, p, seed)| random_k_graph(n, k, p, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn degrees_match_edge_counts(h in small_graph(), s_mask in any::<u64>(), r_mask in any::<u64>()) {
        let n = h.n();
        let s = VSet(s_mask & VSet::full(n).mask()).take_lowest(2);
        let r = VSet(r_mask & VSet::full(n).mask());
        let by_hand = h.edge_sets().filter(|&e| s.is_subset(e) && (e - s).is_subset(r - s)).count();
        prop_assert_eq!(h.deg_into(s, r), by_hand);
        prop_assert_eq!(h.min_codegree(), common::naive_min_codegree(&h));
    }

    #[test]
    fn hamilton_search_matches_naive_oracle(
        n in 6usize..=8,
        l in 1usize..=2,
        p in 0.3f64..0.95,
        seed in any::<u64>(),
    ) {
        let k = 3;
        prop_assume!(n % (k - l) == 0);
        let h = random_k_graph(n, k, p, seed).unwrap();
        let fast = find_hamilton_ell_cycle(&h, l, &SearchBudget::unlimited()).unwrap();
        let naive = common::naive_hamilton_cycle(&h, l);
        prop_assert_eq!(fast.is_found(), naive.is_some());
        if let SearchOutcome::Found(c) = fast {
            prop_assert!(validate_cycle(&h, &c).unwrap());
            prop_assert_eq!(c.edge_count(), n / (k - l));
        }
    }

    #[test]
    fn matching_matches_brute_force(
        left in 0usize..=8,
        right in 0usize..=8,
        bits in prop::collection::vec(any::<u8>(), 8),
    ) {
        let adj: Vec<Vec<usize>> = (0..left)
            .map(|u| (0..right).filter(|&v| bits[u] >> v & 1 == 1).collect())
            .collect();
        let m = max_bipartite_matching(&adj, right);
        prop_assert_eq!(m.size(), common::brute_matching_size(&adj, right));
        let mut seen = vec![false; right];
        for (u, v) in m.pairs() {
            prop_assert!(adj[u].contains(&v));
            prop_assert!(!seen[v]);
            seen[v] = true;
        }
    }

    #[test]
    fn y_tilings_are_disjoint_and_fit(h in small_graph(), b in 0usize..=2) {
        let k = h.k();
        prop_assume!(b < k);
        let t = max_y_tiling(&h, b, &SearchBudget::nodes(50_000)).unwrap();
        if let SearchOutcome::Found(t) = t {
            prop_assert!(t.len() * (2 * k - b) <= h.n());
            let mut used = VSet::EMPTY;
            for c in &t.copies {
                prop_assert!(c.is_valid_in(&h, b));
                prop_assert!(c.vertices().is_disjoint(used));
                used = used | c.vertices();
            }
        }
    }

    #[test]
    fn instance_files_round_trip(h in small_graph()) {
        let (back, _) = from_json(&to_json(&h, None).unwrap()).unwrap();
        prop_assert_eq!(&back, &h);
        prop_assert_eq!(&from_binary(&to_binary(&h)).unwrap(), &h);
    }
}

fn perturbed(k: usize, l: usize, n: usize) -> impl Strategy<Value = KGraph> {
    let base = build_ideal_extremal(k, l, n).unwrap();
    (any::<u64>(), 0usize..=4, 0usize..=4)
        .prop_map(move |(seed, add, remove)| perturb_extremal(&base, seed, add, remove).unwrap().instance.graph)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn classification_follows_thresholds(h in perturbed(3, 1, 12)) {
        let config = SolverConfig::default();
        let Some(partition) = find_extremal_partition(&h, 1, config.delta) else { return Ok(()) };
        let cv = classify_vertices(&h, &partition, &config);
        prop_assert_eq!(classify_vertices(&h, &partition, &config), cv.clone());
        let c = binom_f(partition.b.len(), h.k() - 1);
        for v in h.vertices() {
            let d = h.deg_into(VSet::singleton(v), partition.b) as f64;
            let expect = if d >= (1.0 - config.eps1) * c {
                0
            } else if d <= config.eps1 * c {
                1
            } else {
                2
            };
            let got = [cv.a_prime, cv.b_prime, cv.v0].iter().position(|s| s.contains(v)).unwrap();
            prop_assert_eq!(got, expect);
        }
        prop_assert_eq!(cv.a_prime | cv.b_prime | cv.v0, h.vertices());
        prop_assert_eq!((cv.a_prime & cv.b_prime) | (cv.a_prime & cv.v0) | (cv.b_prime & cv.v0), VSet::EMPTY);
    }

    #[test]
    fn local_minimum_makes_b_sparse_when_a_meets_b_prime(h in perturbed(3, 1, 12)) {
        let config = SolverConfig::default();
        let Some(partition) = find_extremal_partition(&h, 1, config.delta) else { return Ok(()) };
        let cv = classify_vertices(&h, &partition, &config);
        if !(partition.a & cv.b_prime).is_empty() {
            prop_assert!(partition.b.is_subset(cv.b_prime));
        }
    }

    #[test]
    fn connectors_are_valid_paths(h in perturbed(5, 2, 12), pick in any::<u64>()) {
        let config = SolverConfig::default();
        let Some(partition) = find_extremal_partition(&h, 2, config.delta) else { return Ok(()) };
        let cv = classify_vertices(&h, &partition, &config);
        let table = classify_ell_sets(&h, 2, &partition, &cv, &config);
        let b = cv.b_prime.to_vec();
        let i = (pick % (b.len() as u64 - 3)) as usize;
        let (l1, l2) = (VSet::from_vertices([b[i], b[i + 1]]), VSet::from_vertices([b[i + 2], b[i + 3]]));
        let forbidden = VSet::from_vertices(b.iter().copied().filter(|&v| v % 5 == 4));
        let forbidden = forbidden - l1 - l2;
        if let Some(p) = connect(&h, l1, l2, forbidden, &cv, &table) {
            prop_assert!(validate_path(&h, &p).unwrap());
            prop_assert_eq!((p.start(), p.end()), (l1, l2));
            prop_assert!((p.vertex_set() - l1 - l2).is_disjoint(forbidden));
        }
    }

    #[test]
    fn pipeline_agrees_with_exact_search(h in perturbed(3, 1, 12)) {
        let run = run_pipeline(&h, 1, &SolverConfig::default(), &SearchBudget::unlimited()).unwrap();
        let exact = find_hamilton_ell_cycle(&h, 1, &SearchBudget::unlimited()).unwrap();
        match run.outcome {
            PipelineOutcome::Cycle { cycle, .. } => {
                prop_assert!(validate_cycle(&h, &cycle).unwrap());
                prop_assert_eq!(cycle.edge_count(), 6);
                prop_assert!(exact.is_found());
            }
            PipelineOutcome::NoCycle => prop_assert!(exact.is_not_found()),
            other => prop_assert!(false, "unexpected outcome {:?}", other),
        }
    }
}
