use std::collections::BTreeSet;
use std::time::Duration;

use proptest::prelude::*;
use tenpoints::engines::{brute_cliques, count_cliques, has_kclique, search, Clique, CountOutcome, Kpkc};
use tenpoints::randgen::{gen_grunert, gen_rare, GrunertParams, RareAttractionParams};
use tenpoints::tverberg::build_h;
use tenpoints::{Algorithm, Chirotope, KPartiteGraph, SearchOutcome};

fn graph_strategy() -> impl Strategy<Value = KPartiteGraph> {
    prop::collection::vec(0usize..=5, 0..=5).prop_flat_map(|sizes| {
        let g = KPartiteGraph::empty_with_parts(&sizes);
        let pairs: Vec<(usize, usize)> = (0..g.n())
            .flat_map(|u| (u + 1..g.n()).map(move |v| (u, v)))
            .filter(|&(u, v)| g.part(u) != g.part(v))
            .collect();
        (Just(sizes), prop::collection::vec(prop::bool::weighted(0.7), pairs.len()), Just(pairs))
    })
    .prop_map(|(sizes, keep, pairs)| {
        let mut g = KPartiteGraph::empty_with_parts(&sizes);
        for (&(u, v), _) in pairs.iter().zip(&keep).filter(|(_, &k)| k) {
            g.add_edge(u, v).unwrap();
        }
        g
    })
}

fn set(g: &KPartiteGraph, alg: Algorithm) -> BTreeSet<Clique> {
    let all: Vec<Clique> = search(g, alg, None).unwrap().collect();
    let unique: BTreeSet<Clique> = all.iter().cloned().collect();
    assert_eq!(unique.len(), all.len(), "{alg} yielded a clique twice");
    unique
}

proptest! {
    #[test]
    fn engines_agree_with_brute_force(g in graph_strategy()) {
        let oracle = brute_cliques(&g).unwrap();
        prop_assert_eq!(&set(&g, Algorithm::Kpkc), &oracle);
        prop_assert_eq!(&set(&g, Algorithm::FindClique), &oracle);
        for c in &oracle {
            prop_assert!(c.is_valid_in(&g));
        }
    }

    #[test]
    fn prec_depth_does_not_change_the_answer(g in graph_strategy(), depth in 0usize..8) {
        let a: BTreeSet<Clique> = Kpkc::new(&g).with_prec_depth(depth).collect();
        prop_assert_eq!(a, brute_cliques(&g).unwrap());
    }
}

#[test]
fn generated_families_agree_across_engines() {
    for seed in 0..40 {
        let g = gen_grunert(&GrunertParams { k: 5, min_p: 2, max_p: 6, a: 0.4, b: 0.9, seed }).unwrap();
        let oracle = brute_cliques(&g).unwrap();
        assert_eq!(set(&g, Algorithm::Kpkc), oracle, "grunert seed {seed}");
        assert_eq!(set(&g, Algorithm::FindClique), oracle, "grunert seed {seed}");
        let g = gen_rare(&RareAttractionParams { k: 6, max_p: 6, a: 0.3, seed }).unwrap();
        let oracle = brute_cliques(&g).unwrap();
        assert_eq!(set(&g, Algorithm::Kpkc), oracle, "rare seed {seed}");
        assert_eq!(set(&g, Algorithm::FindClique), oracle, "rare seed {seed}");
    }
}

#[test]
fn runs_are_deterministic() {
    let g = gen_grunert(&GrunertParams { k: 6, min_p: 3, max_p: 8, a: 0.6, b: 0.9, seed: 4 }).unwrap();
    for alg in [Algorithm::Kpkc, Algorithm::FindClique] {
        let a: Vec<_> = search(&g, alg, None).unwrap().collect();
        let b: Vec<_> = search(&g, alg, None).unwrap().collect();
        assert!(!a.is_empty());
        assert_eq!(a, b, "{alg}");
    }
}

#[test]
fn timeout_is_not_reported_as_absence() {
    let chi = Chirotope::convex(10);
    let h = build_h(&chi).unwrap();
    let outcome = has_kclique(h.graph(), Algorithm::FindClique, Some(Duration::from_millis(200))).unwrap();
    assert_eq!(outcome, SearchOutcome::Timeout);
    let counted = count_cliques(h.graph(), Algorithm::Kpkc, Some(Duration::from_millis(1))).unwrap();
    assert!(matches!(counted, CountOutcome::Timeout(0)));
}

#[test]
fn brute_force_refuses_h() {
    let h = build_h(&Chirotope::convex(10)).unwrap();
    assert!(has_kclique(h.graph(), Algorithm::Brute, None).is_err());
}
