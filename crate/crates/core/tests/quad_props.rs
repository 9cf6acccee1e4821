mod common;

use common::*;
use manypoints::poly::{rational_places, RationalFunction};
use manypoints::quad::{QuadraticCharacter, SplitStatus};
use proptest::prelude::*;

fn statuses(c: &QuadraticCharacter) -> Vec<SplitStatus> {
    rational_places(c.field()).iter().map(|p| c.status_at(p).unwrap()).collect()
}

fn odd() -> impl Strategy<Value = u32> {
    proptest::sample::select(ODD_ORDERS.to_vec())
}

fn even() -> impl Strategy<Value = u32> {
    proptest::sample::select(EVEN_ORDERS.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn kummer_square_scaling(q in odd(), seed in any::<u64>()) {
        let f = field(q);
        let mut r = rng(seed);
        let h = squarefree(&f, 6, &mut r);
        let u = rational(&f, 3, &mut r);
        let a = QuadraticCharacter::new(&h).unwrap();
        let b = QuadraticCharacter::new(&h.mul(&u.mul(&u))).unwrap();
        prop_assert_eq!(a.ramified(), b.ramified());
        prop_assert_eq!(a.genus(), b.genus());
        prop_assert_eq!(statuses(&a), statuses(&b));
    }

    #[test]
    fn artin_schreier_shift(q in even(), seed in any::<u64>()) {
        let f = field(q);
        let mut r = rng(seed);
        let h = as_generator(&f, 5, &mut r);
        let z = rational(&f, 2, &mut r);
        let shifted = h.add(&z.mul(&z)).add(&z);
        let (Ok(a), Ok(b)) = (QuadraticCharacter::new(&h), QuadraticCharacter::new(&shifted)) else {
            // Degenerate before and after, never just one of them.
            prop_assert!(QuadraticCharacter::new(&h).is_err() && QuadraticCharacter::new(&shifted).is_err());
            return Ok(());
        };
        prop_assert_eq!(a.ramified(), b.ramified());
        prop_assert_eq!(a.genus(), b.genus());
        prop_assert_eq!(statuses(&a), statuses(&b));
        prop_assert_eq!(a.reduced_function(), b.reduced_function());
    }

    #[test]
    fn artin_schreier_orders_and_genus(q in even(), seed in any::<u64>()) {
        let f = field(q);
        let mut r = rng(seed);
        if let Ok(c) = QuadraticCharacter::new(&as_generator(&f, 6, &mut r)) {
            let mut weight = 0;
            for p in c.ramified() {
                let m = p.pole_order.unwrap();
                prop_assert_eq!(m % 2, 1);
                weight += (m as u64 + 1) * p.place.degree() as u64;
            }
            prop_assert_eq!(c.genus(), weight / 2 - 1);
            prop_assert_eq!(c.genus() == 0, weight == 2);
        }
    }

    #[test]
    fn kummer_degree_and_genus(q in odd(), seed in any::<u64>()) {
        let f = field(q);
        let mut r = rng(seed);
        let h = rational(&f, 5, &mut r);
        if let Ok(c) = QuadraticCharacter::new(&h) {
            let s: u64 = c.ramified().iter().map(|p| p.place.degree() as u64).sum();
            prop_assert_eq!(s % 2, 0);
            prop_assert!(c.ramified().iter().all(|p| p.pole_order.is_none()));
            prop_assert_eq!(c.genus(), s / 2 - 1);
            prop_assert_eq!(c.genus() == 0, s == 2);
        }
    }
}

#[test]
fn degenerate_inputs_are_rejected() {
    let f3 = field(3);
    let x = RationalFunction::x(&f3);
    assert!(QuadraticCharacter::new(&x.mul(&x)).is_err());
    assert!(QuadraticCharacter::new(&x.mul(&x).scale(&f3.from_int(2))).is_err());
    let f2 = field(2);
    let z = RationalFunction::x(&f2);
    assert!(QuadraticCharacter::new(&z.mul(&z).add(&z)).is_err());
}
