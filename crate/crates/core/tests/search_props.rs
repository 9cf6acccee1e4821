mod common;

use std::collections::BTreeMap;

use common::*;
use manypoints::compositum::CompositumSpec;
use manypoints::search::{enumerate_candidates, evaluate_candidate, run_search, Family, Record, SearchSpace};
use manypoints::tables::serre_bound;
use proptest::prelude::*;

fn space(choice: usize, cap: u64) -> SearchSpace {
    match choice {
        0 => SearchSpace::new(&field(2), 2, Family::Even { place_degree: 1, max_order: 3 }, cap),
        1 => SearchSpace::new(&field(2), 2, Family::Even { place_degree: 2, max_order: 1 }, cap),
        2 => SearchSpace::new(&field(3), 2, Family::Odd { pool_degree: 2, max_degree: 4 }, cap),
        _ => SearchSpace::new(&field(9), 2, Family::Odd { pool_degree: 1, max_degree: 2 }, cap),
    }
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn pruning_equals_post_filter(choice in 0usize..4, cap in 0u64..6) {
        let pruned = run_search(&space(choice, cap));
        let full = run_search(&space(choice, u64::MAX));
        let filtered: BTreeMap<u64, Record> = full.records.into_iter().filter(|(g, _)| *g <= cap).collect();
        prop_assert_eq!(pruned.records, filtered);
    }

    #[test]
    fn records_are_sound(choice in 0usize..4, cap in 0u64..6) {
        let book = run_search(&space(choice, cap));
        book.reverify().unwrap();
        for r in book.records.values() {
            prop_assert!(r.genus <= cap);
            prop_assert!(r.n <= serre_bound(book.q as u64, r.genus));
        }
    }

    #[test]
    fn thread_count_does_not_matter(choice in 0usize..4, threads in 1usize..6) {
        let s = space(choice, 4);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        prop_assert_eq!(pool.install(|| run_search(&s)), run_search(&s));
    }
}

#[test]
fn stream_contains_table_pair_and_matches_book() {
    let s = space(0, 2);
    let (cands, skipped) = enumerate_candidates(&s);
    let f = field(2);
    let target = CompositumSpec::parse(&f, &["1/x", "1/(x+1)"]).unwrap();
    assert!(cands.iter().any(|c| c.generators() == target.generators()));
    let book = run_search(&s);
    let m = book.stats.generators as u64;
    assert_eq!(cands.len() as u64 + skipped, m * (m - 1) / 2);
    let best1 = cands.iter().filter_map(|c| evaluate_candidate(c, 2)).filter(|(g, _)| *g == 1).map(|(_, n)| n).max();
    assert_eq!(best1, book.best(1));
}

#[test]
fn symmetry_reduction_keeps_the_book() {
    for choice in 0..4 {
        let plain = run_search(&space(choice, 4));
        let sym = run_search(&space(choice, 4).with_symmetry(true));
        let view = |b: &manypoints::search::RecordBook| -> Vec<(u64, u64, Vec<usize>)> {
            b.records.values().map(|r| (r.genus, r.n, r.indices.clone())).collect()
        };
        assert_eq!(view(&plain), view(&sym), "space {choice}");
        assert!(sym.stats.evaluated <= plain.stats.evaluated);
    }
}
