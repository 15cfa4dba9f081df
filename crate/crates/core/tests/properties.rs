use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::sample::subsequence;

use rootposet::qt::{decompose_q2_brackets, expand_q2_brackets};
use rootposet::*;

/// Random posets on up to 10 elements; relations only go from lower to
/// higher index, so every draw is acyclic.
fn small_poset() -> impl Strategy<Value = GradedPoset> {
    (1usize..=10).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|b| (0..b).map(move |a| (a, b))).collect();
        let k = pairs.len();
        subsequence(pairs, 0..=k).prop_map(move |rel| GradedPoset::build(n, &rel).unwrap())
    })
}

fn relabeled() -> impl Strategy<Value = (GradedPoset, Vec<usize>)> {
    small_poset().prop_flat_map(|p| {
        let perm: Vec<usize> = (0..p.n()).collect();
        (Just(p), Just(perm).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn antichains_match_subsets(p in small_poset()) {
        let walked: Vec<u64> = p.antichains().map(|a| a.0).collect();
        let brute: Vec<u64> = (0..1u64 << p.n()).filter(|&s| {
            (0..p.n()).all(|x| s >> x & 1 == 0 || (0..p.n()).all(|y| x == y || s >> y & 1 == 0 || !p.order_leq(x, y)))
        }).collect();
        prop_assert_eq!(walked, brute);
    }

    #[test]
    fn text_round_trip(p in small_poset()) {
        prop_assert_eq!(GradedPoset::from_text(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn panyushev_is_a_bijection(p in small_poset()) {
        let all: BTreeSet<u64> = p.antichains().map(|a| a.0).collect();
        let images: BTreeSet<u64> = all.iter().map(|&a| panyushev_step(&p, Antichain(a)).0).collect();
        prop_assert_eq!(&images, &all);
        let total: usize = panyushev_orbits(&p).iter().map(|o| o.length).sum();
        prop_assert_eq!(total, all.len());
    }

    #[test]
    fn ideals_and_antichains_correspond(p in small_poset()) {
        for a in p.antichains() {
            let ideal = p.ideal_of(a).unwrap();
            prop_assert!(p.is_order_ideal(ideal.0));
            prop_assert_eq!(p.crown(ideal).unwrap(), a);
        }
    }

    #[test]
    fn canonical_form_ignores_labels((p, perm) in relabeled()) {
        let q = p.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_form(&p), canonical_form(&q));
        prop_assert!(is_isomorphic(&p, &q));
        prop_assert_eq!(count(&p), count(&q));
    }

    #[test]
    fn parabolics_are_nested(p in small_poset(), pick in any::<u64>()) {
        let mins = p.minimals().mask();
        let big = mins & pick;
        let small = big & (pick >> 7);
        let inner = p.parabolic_mask(small).unwrap();
        let outer = p.parabolic_mask(big).unwrap();
        prop_assert_eq!(inner & !outer, 0);
        prop_assert_eq!(p.parabolic_mask(mins).unwrap(), p.all());
    }

    #[test]
    fn q2_brackets_round_trip(steps in prop::collection::vec((1u32..4, 1u32..6), 1..8)) {
        // Nested summands: shifts increase while lengths decrease.
        let mut parts = Vec::new();
        let (mut a, mut b) = (0, steps.iter().map(|s| s.1).sum::<u32>() + 1);
        for (da, db) in steps {
            parts.push((a, b));
            a += da;
            b -= db;
        }
        let u = expand_q2_brackets(&parts).unwrap();
        // The greedy split need not succeed on every nested sum, but
        // whatever it returns must expand back and be a fixed point.
        if let Ok(back) = decompose_q2_brackets(&u) {
            prop_assert_eq!(&expand_q2_brackets(&back).unwrap(), &u);
            prop_assert_eq!(decompose_q2_brackets(&expand_q2_brackets(&back).unwrap()).unwrap(), back);
        }
        if parts.len() == 1 {
            prop_assert!(decompose_q2_brackets(&u).is_ok());
        }
    }
}

fn count(p: &GradedPoset) -> (usize, Vec<usize>) {
    (p.count_antichains(), p.rank_vector())
}
