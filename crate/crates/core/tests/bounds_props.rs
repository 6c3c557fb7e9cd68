mod common;

use common::*;
use grasscode::bounds::{one_distance_bound, relative_code_bound, simplex_size_for, two_distance_bound};
use grasscode::sympoly::{frac, rat};
use grasscode::zonal::annihilator_sympoly;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = grasscode::sympoly::Rational> {
    (-30i64..=30, 1i64..=17).prop_map(|(p, q)| frac(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn one_distance_reduces_at_m1(alpha in rational(), n in 2i64..=15) {
        prop_assume!(alpha.clone() * rat(n) != rat(1));
        prop_assert_eq!(one_distance_bound(&alpha, 1, n as usize).value, Some(dgs_one(&alpha, n)));
    }

    #[test]
    fn two_distance_reduces_at_m1(alpha in rational(), beta in rational(), n in 2i64..=15) {
        match two_distance_bound(&alpha, &beta, 1, n as usize) {
            Ok(b) => prop_assert_eq!(b.value, Some(dgs_two(&alpha, &beta, n))),
            Err(_) => {
                let den = rat(2) - rat(n + 1) * (&alpha + &beta) + rat(n * (n + 1)) * &alpha * &beta;
                prop_assert_eq!(den, rat(0));
            }
        }
    }

    #[test]
    fn simplex_inversion(alpha in rational(), n in 2usize..=12, pick in any::<usize>()) {
        let m = 1 + pick % (n / 2);
        prop_assert_eq!(simplex_size_for(&alpha, m, n), one_distance_bound(&alpha, m, n).value);
    }

    #[test]
    fn annihilator_matches_closed_forms(alpha in rational(), beta in rational(), n in 2usize..=9, pick in any::<usize>()) {
        let m = 1 + pick % (n / 2);
        let f1 = annihilator_sympoly(std::slice::from_ref(&alpha), m).unwrap();
        prop_assert_eq!(relative_code_bound(&f1, m, n).unwrap().value, one_distance_bound(&alpha, m, n).value);
        if let Ok(closed) = two_distance_bound(&alpha, &beta, m, n) {
            let f2 = annihilator_sympoly(&[alpha.clone(), beta.clone()], m).unwrap();
            prop_assert_eq!(relative_code_bound(&f2, m, n).unwrap().value, closed.value);
        }
    }
}

#[test]
fn bounds_are_reproducible() {
    assert_eq!(check_bound_determinism(), Ok(()));
}
