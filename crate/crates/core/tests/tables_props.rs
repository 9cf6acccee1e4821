mod common;

use common::*;
use manypoints::expr::parse_expr;
use manypoints::tables::{hasse_weil_bound, isqrt, load_dataset, serre_bound, RowFlag};
use proptest::prelude::*;

proptest! {
    #[test]
    fn isqrt_is_floor(n in any::<u64>()) {
        let n = n as u128;
        let r = isqrt(n);
        prop_assert!(r * r <= n && (r + 1) * (r + 1) > n);
    }
}

#[test]
fn serre_below_hasse_weil_and_increasing() {
    for q in 2..=128u64 {
        for g in 0..=50u64 {
            assert!(serre_bound(q, g) <= hasse_weil_bound(q, g), "q={q} g={g}");
            if g > 0 {
                assert!(serre_bound(q, g) > serre_bound(q, g - 1), "q={q} g={g}");
                assert!(hasse_weil_bound(q, g) > hasse_weil_bound(q, g - 1), "q={q} g={g}");
            }
        }
    }
    assert_eq!(serre_bound(2, 1), 5);
}

#[test]
fn dataset_integrity() {
    for row in load_dataset().unwrap() {
        assert!(ALL_ORDERS.contains(&row.q), "{}", row.label());
        if row.is_clean() {
            assert!(!row.has_flag(RowFlag::Incomplete));
            let base = field(row.q);
            let ok = base.primitive_elements().iter().any(|w| {
                let f = base.with_generator(w).unwrap();
                row.f_exprs.iter().all(|e| parse_expr(e, &f).is_ok())
            });
            assert!(ok, "{}", row.label());
        }
        if let (Some(g), Some((_, hi))) = (row.expected_g, row.nq_range) {
            assert!(row.expected_n <= hi, "{}", row.label());
            assert!(hi <= serre_bound(row.q as u64, g), "{}", row.label());
        }
    }
}
