mod common;

use common::*;
use manypoints::poly::{factor, poly_gcd, squarefree_part, Place, ResidueElement};
use proptest::prelude::*;

fn order() -> impl Strategy<Value = u32> {
    proptest::sample::select(ALL_ORDERS.to_vec())
}

/// Sum of two residues at the same place.
fn residue_add(a: &ResidueElement, b: &ResidueElement) -> ResidueElement {
    match (a, b) {
        (ResidueElement::Infinity(x), ResidueElement::Infinity(y)) => ResidueElement::Infinity(x + y),
        (ResidueElement::Finite { modulus, value: x }, ResidueElement::Finite { value: y, .. }) => {
            ResidueElement::Finite { modulus: modulus.clone(), value: x.add(y).rem(modulus) }
        }
        _ => panic!("residues at different places"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn factor_round_trip(q in order(), d in 1usize..=12, seed in any::<u64>()) {
        let f = field(q);
        let mut r = rng(seed);
        let p = poly(&f, d, &mut r);
        let fac = factor(&p).unwrap();
        prop_assert_eq!(fac.expand(), p);
        prop_assert!(fac.factors.iter().all(|(g, _)| g.is_monic() && Place::finite(g.clone()).is_ok()));
    }

    #[test]
    fn product_formula(q in order(), seed in any::<u64>()) {
        let f = field(q);
        let mut r = rng(seed);
        let h = rational(&f, 6, &mut r);
        let mut places = vec![Place::Infinity];
        for p in [h.numerator(), h.denominator()] {
            if !p.is_constant() {
                places.extend(factor(p).unwrap().factors.into_iter().map(|(g, _)| Place::finite(g).unwrap()));
            }
        }
        let total: i64 = places.iter().map(|pl| h.valuation(pl).unwrap() * pl.degree() as i64).sum();
        prop_assert_eq!(total, 0);
    }

    #[test]
    fn squarefree_part_properties(q in order(), d in 1usize..=10, seed in any::<u64>()) {
        let f = field(q);
        let mut r = rng(seed);
        // Build an input with repeated factors on purpose.
        let a = monic(&f, d.div_ceil(2), &mut r);
        let b = monic(&f, d / 2, &mut r);
        let p = a.mul(&b.pow(2));
        let s = squarefree_part(&p).unwrap();
        prop_assert!(s.divides(&p));
        prop_assert!(poly_gcd(&s, &s.derivative()).unwrap().is_one());
        let roots = |x: &manypoints::poly::Polynomial| -> Vec<_> {
            factor(x).unwrap().factors.into_iter().map(|(g, _)| g).collect()
        };
        prop_assert_eq!(roots(&s), roots(&p));
    }

    #[test]
    fn valuation_is_additive(q in order(), seed in any::<u64>()) {
        let f = field(q);
        let mut r = rng(seed);
        let (g, h) = (rational(&f, 4, &mut r), rational(&f, 4, &mut r));
        let place = if rand::Rng::gen_bool(&mut r, 0.2) {
            Place::Infinity
        } else {
            let pi = factor(&monic(&f, 2, &mut r)).unwrap().factors.remove(0).0;
            Place::finite(pi).unwrap()
        };
        prop_assert_eq!(
            g.mul(&h).valuation(&place).unwrap(),
            g.valuation(&place).unwrap() + h.valuation(&place).unwrap()
        );
    }

    #[test]
    fn evaluation_is_additive(q in order(), seed in any::<u64>()) {
        let f = field(q);
        let mut r = rng(seed);
        let (g, h) = (rational(&f, 4, &mut r), rational(&f, 4, &mut r));
        let place = if rand::Rng::gen_bool(&mut r, 0.2) {
            Place::Infinity
        } else {
            let pi = factor(&monic(&f, 3, &mut r)).unwrap().factors.remove(0).0;
            Place::finite(pi).unwrap()
        };
        if let (Ok(a), Ok(b)) = (g.evaluate(&place), h.evaluate(&place)) {
            prop_assert_eq!(g.add(&h).evaluate(&place).unwrap(), residue_add(&a, &b));
        }
    }
}
