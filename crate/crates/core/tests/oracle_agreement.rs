mod common;

use common::*;
use modcanon::{brute_minimal_complement, greedy_tile, SearchBudget};

#[test]
fn greedy_is_minimal_for_small_patterns() {
    oracle_agreement(7, 1, 4, &[P2, P3]).unwrap();
}

#[test]
fn greedy_is_minimal_mod_2_up_to_nine() {
    oracle_agreement(9, 1, 5, &[P2]).unwrap();
}

#[test]
fn greedy_never_stuck_mod_2() {
    for a in small_patterns(10, 1, 11) {
        let out = greedy_tile(&a, P2, 1 << 20);
        assert!(out.is_compact(), "{a}: {:?}", out.status);
        assert!(out.entries.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn oracle_respects_node_limit() {
    let budget = SearchBudget { node_limit: 10, ..oracle_budget() };
    let out = brute_minimal_complement(&pat("0,1,16"), P2, budget);
    assert!(!out.complete);
    assert!(out.best.is_none());
}
