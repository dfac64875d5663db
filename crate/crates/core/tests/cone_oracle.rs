//! Cone membership checked against a 2-D Carathéodory oracle: a point lies in
//! a planar cone iff it lies in the cone of at most two of the generators.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use trinomial_core::linalg::{cone_membership, cone_witness, Rational, RationalVector};

fn in_pair_cone(a: (i64, i64), b: (i64, i64), m: (i64, i64)) -> bool {
    let det = a.0 * b.1 - a.1 * b.0;
    if det == 0 {
        return false;
    }
    // Cramer: m = x·a + y·b
    let x = m.0 * b.1 - m.1 * b.0;
    let y = a.0 * m.1 - a.1 * m.0;
    x * det.signum() >= 0 && y * det.signum() >= 0
}

fn on_ray(a: (i64, i64), m: (i64, i64)) -> bool {
    a.0 * m.1 == a.1 * m.0 && a.0 * m.0 + a.1 * m.1 >= 0 && (a != (0, 0) || m == (0, 0))
}

fn oracle(gens: &[(i64, i64)], m: (i64, i64)) -> bool {
    if m == (0, 0) || gens.iter().any(|&a| on_ray(a, m)) {
        return true;
    }
    gens.iter()
        .enumerate()
        .any(|(i, &a)| gens[i + 1..].iter().any(|&b| in_pair_cone(a, b, m)))
}

fn vector((x, y): (i64, i64)) -> RationalVector {
    RationalVector::from_ints(&[x, y])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn membership_matches_caratheodory(
        gens in prop::collection::vec((-4i64..=4, -4i64..=4), 1..5),
        m in (-6i64..=6, -6i64..=6),
    ) {
        let gv: Vec<RationalVector> = gens.iter().copied().map(vector).collect();
        let expected = oracle(&gens, m);
        prop_assert_eq!(cone_membership(&gv, &vector(m)), expected);
        if let Some(w) = cone_witness(&gv, &vector(m)) {
            prop_assert!(w.iter().all(|x| !x.is_negative()));
            let mut sum = [Rational::zero(), Rational::zero()];
            for (l, g) in w.iter().zip(&gens) {
                sum[0] += l * Rational::from_integer(BigInt::from(g.0));
                sum[1] += l * Rational::from_integer(BigInt::from(g.1));
            }
            prop_assert_eq!(sum, [Rational::from_integer(m.0.into()), Rational::from_integer(m.1.into())]);
        }
    }
}
