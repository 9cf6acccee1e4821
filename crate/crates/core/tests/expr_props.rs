mod common;

use common::*;
use manypoints::expr::{format_canonical, parse_expr};
use manypoints::tables::{load_dataset, RowFlag};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn format_then_parse(q in proptest::sample::select(ALL_ORDERS.to_vec()), seed in any::<u64>()) {
        let f = field(q);
        let mut r = rng(seed);
        let h = rational(&f, 5, &mut r);
        prop_assert_eq!(parse_expr(&format_canonical(&h), &f).unwrap(), h.clone());
        prop_assert_eq!(parse_expr(&h.to_string(), &f).unwrap(), h);
    }
}

#[test]
fn every_table_expression_parses() {
    for row in load_dataset().unwrap() {
        if row.has_flag(RowFlag::Incomplete) && row.f_exprs.is_empty() {
            continue;
        }
        let base = field(row.q);
        let ok = base.primitive_elements().iter().any(|w| {
            let f = base.with_generator(w).unwrap();
            row.f_exprs.iter().all(|e| parse_expr(e, &f).is_ok())
        });
        assert!(ok, "{}: {:?}", row.label(), row.f_exprs);
    }
}
