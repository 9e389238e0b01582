//! Wire-format round trips under randomized structure.

use endband::seq::EPSeq;
use endband::Complex64;
use endband_cli::formats::{OpSpec, SeqSpec};
use proptest::prelude::*;

fn arb_seq() -> impl Strategy<Value = EPSeq<i64>> {
    (
        proptest::collection::vec(-4i64..=4, 1..=4),
        proptest::collection::vec(-4i64..=4, 0..=4),
        -6i64..=6,
        proptest::collection::vec(-4i64..=4, 1..=4),
    )
        .prop_map(|(l, c, o, r)| EPSeq::new(l, c, o, r))
}

proptest! {
    #[test]
    fn seq_json_round_trip(seq in arb_seq()) {
        let json = serde_json::to_string(&SeqSpec::from_seq(&seq)).unwrap();
        let back: SeqSpec = serde_json::from_str(&json).unwrap();
        prop_assert!(back.into_seq().unwrap().obs_eq(&seq));
    }

    #[test]
    fn op_json_round_trip(exps in arb_seq(), shift in -3i64..=3) {
        let op = endband::band::MonomialLoop::new(shift, exps, Complex64::ONE)
            .eval(Complex64::from_polar(1.0, 0.83));
        let json = serde_json::to_string(&OpSpec::from_op(&op)).unwrap();
        let back: OpSpec = serde_json::from_str(&json).unwrap();
        prop_assert!(back.into_op().unwrap().obs_eq(&op));
    }
}
