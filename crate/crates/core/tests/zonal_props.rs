mod common;

use common::*;
use grasscode::sympoly::partitions_up_to;
use grasscode::zonal::{expand_in_zonal, mc_zonal_inner, zonal_explicit};
use num_traits::{One, Zero};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn zonals_expand_to_unit_vectors(n in 2usize..=10, pick in any::<usize>()) {
        let m = 1 + pick % (n / 2);
        for mu in partitions_up_to(2, m) {
            let e = expand_in_zonal(zonal_explicit(&mu, m, n).unwrap().poly(), m, n).unwrap();
            for nu in partitions_up_to(2, m) {
                let c = e.coeff(&nu);
                let ok = if nu == mu { c.is_one() } else { c.is_zero() };
                prop_assert!(ok, "Z{} in G({}, {}) has c{} = {}", mu, m, n, nu, c);
            }
        }
    }
}

#[test]
fn unit_expansions() {
    assert_eq!(check_unit_expansions(3), Ok(()));
}

#[test]
fn z1_matches_trace_form() {
    assert_eq!(check_z1_pairs(4), Ok(()));
}

#[test]
fn zonal_orthogonality_by_monte_carlo() {
    for &(m, n) in &[(2usize, 4usize), (2, 5), (3, 6)] {
        let parts = partitions_up_to(2, m);
        for (i, mu) in parts.iter().enumerate() {
            for nu in &parts[i + 1..] {
                let est = mc_zonal_inner(mu, nu, m, n, 200_000, 5).unwrap();
                assert!(
                    est.estimate.abs() < MC_SIGMAS * est.stderr,
                    "<Z{mu}, Z{nu}> in G({m}, {n}) = {} +- {}",
                    est.estimate,
                    est.stderr
                );
            }
        }
    }
}

#[test]
fn aggregate_reproduces() {
    assert_eq!(check_reproducing(2, 4, 2, 100_000, 6), Ok(()));
    assert_eq!(check_reproducing(1, 3, 2, 100_000, 7), Ok(()));
}
