//! Distance engines against a naive scan of every codeword.

use proptest::prelude::*;
use z4codes::codes::{lee_weight, standard_form, Z4Code, Z4Matrix};
use z4codes::distance::{
    macwilliams_swe, min_lee, min_lee_direct, min_lee_via_dual, swe_by_enumeration, DistancePolicy, EngineOptions,
    Outcome,
};

fn naive_min_lee(c: &Z4Code) -> u32 {
    c.enumerate_codewords(1 << 16)
        .unwrap()
        .map(|w| lee_weight(&w))
        .filter(|&w| w > 0)
        .min()
        .unwrap()
}

fn matrix() -> impl Strategy<Value = Z4Matrix> {
    (1usize..10, 1usize..5).prop_flat_map(|(n, k)| {
        prop::collection::vec(prop::collection::vec(0u8..4, n), k)
            .prop_map(move |rows| Z4Matrix::from_rows(n, &rows).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn engines_match_naive_scan(m in matrix()) {
        let c = standard_form(&m);
        prop_assume!(!c.is_zero());
        let opts = EngineOptions::default();
        let naive = naive_min_lee(&c);
        prop_assert_eq!(min_lee_direct(&c, &opts).unwrap().d(), Some(naive));
        prop_assert_eq!(min_lee_via_dual(&c, &opts).unwrap().d(), Some(naive));
        prop_assert_eq!(min_lee(&c, &DistancePolicy::default()).outcome, Outcome::Exact(naive));
    }

    #[test]
    fn transform_matches_dual_census(m in matrix()) {
        let c = standard_form(&m);
        let we = swe_by_enumeration(&c, 1 << 20).unwrap();
        let dual = swe_by_enumeration(&c.dual().unwrap(), 1 << 20).unwrap();
        prop_assert_eq!(macwilliams_swe(&we, &we.total()).unwrap(), dual);
    }
}
