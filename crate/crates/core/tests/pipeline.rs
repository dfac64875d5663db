use num_bigint::BigInt;
use proptest::prelude::*;
use trinomial_core::grading::grading_data;
use trinomial_core::oracle::{graded_dim_oracle, GridSpec};
use trinomial_core::polyhedral::{build_divisor, check_properness, graded_dim_ah, horizontal_obstruction, Obstruction};
use trinomial_core::sample::{batch, SampleSpec};
use trinomial_core::trinomial::RigidityVerdict;
use trinomial_core::Strategy;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_instances_are_consistent(seed in any::<u64>()) {
        let t = batch(seed, 1, SampleSpec { max_n: 5, max_exp: 5, require_unit: false }).remove(0);
        let g = grading_data(&t).unwrap();
        prop_assert!(g.verify(&t));
        let d = build_divisor(&t, &g).unwrap();
        prop_assert!(check_properness(&d).passed());
        for m in GridSpec::new(1).points(&g) {
            let ah = graded_dim_ah(&d, &m).unwrap();
            prop_assert_eq!(ah, BigInt::from(graded_dim_oracle(&g, &m, Strategy::Sequential)));
        }
        let obstructed = horizontal_obstruction(&d) == Obstruction::Obstructed;
        let rigid = t.is_rigid().verdict == RigidityVerdict::Rigid;
        prop_assert_eq!(obstructed, rigid);
        prop_assert_eq!(rigid, t.min_exponent() >= 2);
    }
}
