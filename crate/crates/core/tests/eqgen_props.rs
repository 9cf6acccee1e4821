mod common;

use common::*;
use manypoints::eqgen::generic::{check_closed_form, generic_minimal_polynomial};
use manypoints::eqgen::{minimal_polynomial, verify_membership};
use manypoints::poly::{poly_gcd, rational_places, Polynomial};
use manypoints::quad::{Mode, SplitStatus};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn equation_is_monic_of_full_degree(q in proptest::sample::select(vec![2u32, 4, 8, 3, 9, 27]), n in 1usize..=3, seed in any::<u64>()) {
        let l = instance(q, n, 3, &mut rng(seed));
        let eq = minimal_polynomial(l.spec()).unwrap();
        prop_assert_eq!(eq.degree(), 1 << n);
        prop_assert!(eq.is_monic());
        prop_assert!(verify_membership(&eq, l.spec()));
    }

    #[test]
    fn even_n2_identities(q in proptest::sample::select(vec![2u32, 4, 8, 16]), seed in any::<u64>()) {
        let l = instance(q, 2, 3, &mut rng(seed));
        let eq = minimal_polynomial(l.spec()).unwrap();
        let g = l.spec().generators();
        prop_assert!(eq.coeffs[3].is_one());
        let prod = g[0].mul(&g[1]);
        prop_assert_eq!(&eq.coeffs[0], &prod.mul(&prod));
        prop_assert_eq!(&eq.coeffs[1], &prod);
        prop_assert_eq!(&eq.coeffs[2], &g[0].add(&g[1]));
    }

    #[test]
    fn split_places_give_full_root_sets(q in proptest::sample::select(vec![4u32, 8, 9, 16, 27]), n in 1usize..=2, seed in any::<u64>()) {
        specialization_hits(&instance(q, n, 3, &mut rng(seed)));
    }
}

#[test]
fn generic_n2_and_n3() {
    for mode in [Mode::Kummer, Mode::ArtinSchreier] {
        let c2 = check_closed_form(mode, 2).unwrap();
        assert!(c2.distinct_monomial.is_empty() && c2.ordered_tuple.is_empty());
        let c3 = check_closed_form(mode, 3).unwrap();
        assert!(c3.matches_some_reading());
        assert_eq!(generic_minimal_polynomial(mode, 3).unwrap().len(), 9);
    }
}

/// Number of rational affine places where the specialization test applies;
/// panics if one of them has the wrong number of roots.
fn specialization_hits(l: &manypoints::compositum::CharacterLattice) -> usize {
    let f = l.spec().field();
    let eq = minimal_polynomial(l.spec()).unwrap();
    let mut hits = 0;
    for (place, log) in rational_places(f).iter().zip(l.place_log()) {
        let Some(a) = place.root() else { continue };
        if !log.statuses.iter().all(|s| *s == SplitStatus::Split) {
            continue;
        }
        let Some(vals) = eq.coeffs.iter().map(|c| c.value_at(&a)).collect::<Option<Vec<_>>>() else { continue };
        let p = Polynomial::from_elements(f, &vals);
        if !poly_gcd(&p, &p.derivative()).unwrap().is_one() {
            continue;
        }
        assert_eq!(f.elements().filter(|y| p.eval(y).is_zero()).count(), 1 << l.n(), "x = {a}");
        hits += 1;
    }
    hits
}

#[test]
fn specialization_is_exercised() {
    let mut hits = 0;
    for (i, q) in [9u32, 16, 27, 32].into_iter().cycle().take(40).enumerate() {
        hits += specialization_hits(&instance(q, 2, 3, &mut rng(i as u64)));
    }
    assert!(hits > 10, "{hits}");
}
