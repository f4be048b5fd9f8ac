use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;

use signperm::enumerate::{count_avoiders_unpruned, count_avoiders_with, SearchConfig};
use signperm::series::{egf_chain, egf_d, egf_to_counts, PowerSeries};
use signperm::symmetry::{canonical_form, group_elements, symmetry_orbit, SymmetryElement};
use signperm::{avoids, contains, count_avoiders, PatternSet, SignedPattern, SignedPermutation};

fn perm_parts(max_len: usize, r: u32) -> impl Strategy<Value = (Vec<u32>, Vec<u32>)> {
    (0..=max_len).prop_flat_map(move |n| {
        (
            Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle(),
            prop::collection::vec(1..=r, n),
        )
    })
}

fn signed_perm(max_len: usize) -> impl Strategy<Value = SignedPermutation> {
    (1..=3u32).prop_flat_map(move |r| {
        perm_parts(max_len, r).prop_map(move |(s, g)| SignedPermutation::new(s, g, r).unwrap())
    })
}

fn pattern(r: u32) -> impl Strategy<Value = SignedPattern> {
    perm_parts(3, r)
        .prop_filter("non-empty", |(s, _)| !s.is_empty())
        .prop_map(move |(s, g)| SignedPattern::new(s, g, r).unwrap())
}

fn pattern_set(r: u32) -> impl Strategy<Value = PatternSet> {
    prop::collection::vec(pattern(r), 1..=3).prop_map(move |ps| PatternSet::new(ps, r).unwrap())
}

/// (r, n, T) with r ≤ 3 and n ≤ 4.
fn counting_case() -> impl Strategy<Value = (u32, usize, PatternSet)> {
    (1..=3u32).prop_flat_map(|r| (Just(r), 0..=4usize, pattern_set(r)))
}

fn relabel(r: u32) -> impl Strategy<Value = SymmetryElement> {
    Just((1..=r).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|m| SymmetryElement::relabel(m).unwrap())
}

fn basic_elements(r: u32) -> [SymmetryElement; 3] {
    [
        SymmetryElement::reversal(r),
        SymmetryElement::complement(r),
        SymmetryElement::sign_complement(r),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, rng_algorithm: prop::test_runner::RngAlgorithm::ChaCha, ..ProptestConfig::default() })]

    #[test]
    fn reversal_complement_sign_complement_are_involutions(p in signed_perm(6)) {
        for g in basic_elements(p.sign_bound()) {
            prop_assert_eq!(g.apply(&g.apply(&p).unwrap()).unwrap(), p.clone());
        }
    }

    #[test]
    fn generators_commute(
        (p, h) in signed_perm(6).prop_flat_map(|p| { let r = p.sign_bound(); (Just(p), relabel(r)) })
    ) {
        let [er, ec, _] = basic_elements(p.sign_bound());
        for (a, b) in [(&er, &ec), (&er, &h), (&ec, &h)] {
            let ab = a.apply(&b.apply(&p).unwrap()).unwrap();
            let ba = b.apply(&a.apply(&p).unwrap()).unwrap();
            prop_assert_eq!(ab, ba);
        }
    }

    #[test]
    fn compose_matches_sequential_application(
        (p, h) in signed_perm(5).prop_flat_map(|p| { let r = p.sign_bound(); (Just(p), relabel(r)) })
    ) {
        let r = p.sign_bound();
        for g in group_elements(r).unwrap() {
            let gh = g.compose(&h).unwrap();
            prop_assert_eq!(gh.apply(&p).unwrap(), g.apply(&h.apply(&p).unwrap()).unwrap());
            prop_assert!(g.compose(&g.inverse()).unwrap().is_identity());
        }
    }

    #[test]
    fn containment_is_preserved_by_the_group(
        (p, pat) in (1..=3u32).prop_flat_map(|r| {
            (perm_parts(6, r).prop_map(move |(s, g)| SignedPermutation::new(s, g, r).unwrap()), pattern(r))
        })
    ) {
        let before = contains(&p, &pat).unwrap();
        for g in group_elements(p.sign_bound()).unwrap() {
            let after = contains(&g.apply(&p).unwrap(), &g.apply_pattern(&pat).unwrap()).unwrap();
            prop_assert_eq!(before, after);
        }
    }

    #[test]
    fn counts_are_invariant_under_the_group((r, n, t) in counting_case()) {
        let base = count_avoiders(n, r, &t).unwrap();
        for g in group_elements(r).unwrap() {
            prop_assert_eq!(count_avoiders(n, r, &g.apply_set(&t).unwrap()).unwrap(), base.clone());
        }
    }

    #[test]
    fn canonical_form_is_constant_on_orbits((r, _n, t) in counting_case()) {
        let canon = canonical_form(&t).unwrap();
        let orbit = symmetry_orbit(&t).unwrap();
        prop_assert!(orbit.contains(&t));
        prop_assert_eq!(orbit.iter().next().unwrap(), &canon);
        for member in &orbit {
            prop_assert_eq!(canonical_form(member).unwrap(), canon.clone());
        }
        prop_assert_eq!((4 * (1..=r as usize).product::<usize>()) % orbit.len(), 0);
    }

    #[test]
    fn pruned_search_matches_unpruned((r, n, t) in counting_case()) {
        prop_assert_eq!(
            count_avoiders(n, r, &t).unwrap(),
            count_avoiders_unpruned(n, r, &t).unwrap()
        );
    }

    #[test]
    fn parallel_search_matches_sequential((r, n, t) in counting_case()) {
        prop_assert_eq!(
            count_avoiders_with(n, r, &t, &SearchConfig::default()).unwrap(),
            count_avoiders_with(n, r, &t, &SearchConfig::sequential()).unwrap()
        );
    }

    #[test]
    fn adding_a_pattern_never_increases_the_count(
        (r, n, t, extra) in (1..=3u32).prop_flat_map(|r| (Just(r), 0..=4usize, pattern_set(r), pattern(r)))
    ) {
        let bigger = t.with(extra).unwrap();
        prop_assert!(count_avoiders(n, r, &bigger).unwrap() <= count_avoiders(n, r, &t).unwrap());
    }

    #[test]
    fn avoidance_agrees_with_containment(
        (p, t) in (1..=3u32).prop_flat_map(|r| {
            (perm_parts(5, r).prop_map(move |(s, g)| SignedPermutation::new(s, g, r).unwrap()), pattern_set(r))
        })
    ) {
        let any = t.iter().any(|pat| contains(&p, pat).unwrap());
        prop_assert_eq!(avoids(&p, &t).unwrap(), !any);
    }

    #[test]
    fn pattern_set_display_round_trips((_r, _n, t) in counting_case()) {
        let text = t.to_string();
        prop_assert_eq!(PatternSet::parse(&text, t.sign_bound()).unwrap(), t);
    }

    #[test]
    fn exp_and_log_are_inverse(coeffs in prop::collection::vec(-5i64..=5, 1..8)) {
        let order = 8;
        let mut with_zero = vec![0];
        with_zero.extend(&coeffs);
        let f = PowerSeries::from_integers(&with_zero, order);
        prop_assert_eq!(f.exp().unwrap().log().unwrap(), f.clone());
        let mut with_one = vec![1];
        with_one.extend(&coeffs);
        let g = PowerSeries::from_integers(&with_one, order);
        prop_assert_eq!(g.log().unwrap().exp().unwrap(), g);
    }

    #[test]
    fn division_inverts_multiplication(
        a in prop::collection::vec(-9i64..=9, 1..8),
        b in prop::collection::vec(-9i64..=9, 1..8),
        lead in prop_oneof![1i64..=4, -4i64..=-1],
    ) {
        let order = 10;
        let fa = PowerSeries::from_integers(&a, order);
        let mut bc = vec![lead];
        bc.extend(&b);
        let fb = PowerSeries::from_integers(&bc, order);
        prop_assert_eq!(fa.mul(&fb).div(&fb).unwrap(), fa);
    }

    #[test]
    fn rational_powers_compose(coeffs in prop::collection::vec(-3i64..=3, 1..6), q in 2i64..=4) {
        let order = 7;
        let mut with_one = vec![1];
        with_one.extend(&coeffs);
        let f = PowerSeries::from_integers(&with_one, order);
        let root = f.pow_rational(&BigRational::new(BigInt::from(1), BigInt::from(q))).unwrap();
        let back = (1..q).fold(root.clone(), |acc, _| acc.mul(&root));
        prop_assert_eq!(back, f);
    }

    #[test]
    fn integrate_then_differentiate(coeffs in prop::collection::vec(-20i64..=20, 1..10)) {
        let order = 12;
        let f = PowerSeries::from_integers(&coeffs, order);
        prop_assert_eq!(f.integrate().derivative(), f.truncate(order - 1));
    }
}

#[test]
fn chain_counts_grow_with_n_and_shrink_with_l() {
    let nmax = 10;
    for r in 1..=6u32 {
        let mut previous: Option<Vec<BigUint>> = None;
        for l in 1..=r {
            let counts = egf_to_counts(&egf_chain(r, l, nmax).unwrap(), nmax).unwrap();
            assert!(counts.windows(2).all(|w| w[0] <= w[1]), "r={r} l={l}");
            if let Some(prev) = &previous {
                assert!(counts.iter().zip(prev).all(|(a, b)| a <= b), "r={r} l={l}");
            }
            previous = Some(counts);
        }
        let d = egf_to_counts(&egf_d(r, nmax).unwrap(), nmax).unwrap();
        assert_eq!(Some(d), egf_to_counts(&egf_chain(r, 1, nmax).unwrap(), nmax).ok());
    }
}
