//! The corner-sum Fredholm index against the independent truncated
//! kernel/cokernel oracle.

mod common;

use common::{index_oracle, unitary_corpus};
use endband::band::EPBandOp;

#[test]
fn oracle_matches_corner_sums_for_shifts() {
    for k in -8..=8 {
        let s = EPBandOp::shift_op(k);
        assert_eq!(index_oracle(&s), k, "oracle at shift power {k}");
        assert_eq!(s.fredholm_index().unwrap(), k);
    }
}

#[test]
fn oracle_matches_corner_sums_on_corpus() {
    for (i, op) in unitary_corpus(60, 0xbead).into_iter().enumerate() {
        let corner = op.fredholm_index().unwrap_or_else(|e| panic!("op {i}: {e}"));
        let oracle = index_oracle(&op);
        assert_eq!(corner, oracle, "op {i} (band {})", op.band());
    }
}

#[test]
fn index_additive_under_composition() {
    let ops = unitary_corpus(12, 0xadd);
    for (i, u) in ops.iter().enumerate() {
        for v in &ops[i..] {
            let lhs = u.compose(v).fredholm_index().unwrap();
            assert_eq!(lhs, u.fredholm_index().unwrap() + v.fredholm_index().unwrap());
        }
    }
}
