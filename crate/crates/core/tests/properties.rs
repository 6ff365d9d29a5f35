mod common;

use common::*;
use ellgen::ring::rat;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: CASES, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn series_ring_axioms((a, b, c) in (series(), series(), series())) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn series_inversion(s in invertible_series()) {
        inversion(&s)?;
    }

    #[test]
    fn newton_identities(roots in prop::collection::vec(small_rational(), 0..5)) {
        newton_round_trip(&roots)?;
    }

    #[test]
    fn multiplicative_classes(q in prop::collection::vec(small_rational(), 1..4), t in prop::collection::vec(-3i64..=3, 1..4)) {
        let mut q = q;
        q.insert(0, rat(1, 1));
        multiplicativity(&q, &t)?;
    }

    #[test]
    fn cyclotomic_evaluation_is_a_ring_map(r in ratfn(), s in ratfn(), n in 1u64..=12, k in -20i64..=20) {
        cyclotomic_evaluation(&r, &s, n, k)?;
    }

    #[test]
    fn rational_evaluation_agrees(r in ratfn(), s in ratfn(), x in small_rational()) {
        rational_evaluation(&r, &s, &x)?;
    }
}
