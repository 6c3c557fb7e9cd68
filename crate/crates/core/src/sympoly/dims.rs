//! Dimensions of the irreducible pieces of `L^2(G(m, n))` and q-binomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::partition::{partitions_up_to, Partition};
use crate::error::{Error, Result};

/// Weyl dimension of the `U(n)` irreducible with highest weight `lambda`:
/// `prod_{i<j} (lambda_i - lambda_j + j - i) / (j - i)`.
pub fn weyl_dim(lambda: &[i64]) -> Result<BigInt> {
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotDominant(lambda.to_vec()));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..lambda.len() {
        for j in (i + 1)..lambda.len() {
            let gap = (j - i) as i64;
            num *= BigInt::from(lambda[i] - lambda[j] + gap);
            den *= BigInt::from(gap);
        }
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    Ok(q)
}

/// `dim H_mu(n)`, the dimension of the `U(n)` irreducible with weight
/// `(mu, 0, ..., 0, -reverse(mu))`.
pub fn dim_h(mu: &Partition, n: usize) -> Result<BigInt> {
    if 2 * mu.len() > n {
        return Err(Error::PartitionTooLong {
            partition: mu.to_string(),
            n,
        });
    }
    let mut weight: Vec<i64> = mu.parts().iter().map(|&p| p as i64).collect();
    weight.resize(n - mu.len(), 0);
    weight.extend(mu.reversed_negated());
    weyl_dim(&weight)
}

/// `dim H_k(m, n)`: the sum of `dim H_mu` over `|mu| <= k`, `len(mu) <= m`.
pub fn dim_hk(k: u32, m: usize, n: usize) -> Result<BigInt> {
    if 2 * m > n {
        return Err(Error::OutOfRange(format!("dim H_k needs 2m <= n, got m = {m}, n = {n}")));
    }
    partitions_up_to(k, m)
        .iter()
        .try_fold(BigInt::zero(), |acc, mu| Ok(acc + dim_h(mu, n)?))
}

/// Ordinary binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Gaussian binomial `[n m]_q = prod (q^{n-i} - 1) / (q^{i+1} - 1)`.
pub fn q_binomial(n: u32, m: u32, q: u64) -> Result<BigInt> {
    if m > n || q < 2 {
        return Err(Error::OutOfRange(format!("q-binomial needs 0 <= m <= n and q >= 2, got n = {n}, m = {m}, q = {q}")));
    }
    let q = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..m {
        num *= num_traits::pow(q.clone(), (n - i) as usize) - 1u32;
        den *= num_traits::pow(q.clone(), (i + 1) as usize) - 1u32;
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn weyl_examples() {
        assert_eq!(weyl_dim(&[0, 0, 0, 0]).unwrap(), big(1));
        assert_eq!(weyl_dim(&[1, 0, 0, 0, 0]).unwrap(), big(5));
        assert_eq!(weyl_dim(&[1, 0, 0, -1]).unwrap(), big(15));
        assert!(matches!(weyl_dim(&[0, 1]), Err(Error::NotDominant(_))));
    }

    #[test]
    fn dim_h_examples() {
        assert_eq!(dim_h(&Partition::row(2), 6).unwrap(), big(405));
        assert_eq!(dim_h(&Partition::column(2), 6).unwrap(), big(189));
        assert_eq!(dim_h(&Partition::new(vec![2, 1]).unwrap(), 6).unwrap(), big(3675));
        assert!(matches!(dim_h(&Partition::column(3), 5), Err(Error::PartitionTooLong { .. })));
    }

    #[test]
    fn dim_hk_examples() {
        for n in 2..9usize {
            let n2 = (n * n) as u64;
            assert_eq!(dim_hk(0, 1, n).unwrap(), big(1));
            assert_eq!(dim_hk(1, 1, n).unwrap(), BigInt::from(n2));
            if n >= 4 {
                assert_eq!(dim_hk(1, 2, n).unwrap(), BigInt::from(n2));
                assert_eq!(dim_hk(2, 2, n).unwrap(), binomial(n2, 2));
            }
        }
        assert!(dim_hk(1, 3, 5).is_err());
    }

    #[test]
    fn q_binomial_examples() {
        assert_eq!(q_binomial(2, 1, 3).unwrap(), big(4));
        assert_eq!(q_binomial(4, 2, 2).unwrap(), big(35));
        assert_eq!(q_binomial(5, 1, 7).unwrap(), big((7i64.pow(5) - 1) / 6));
        assert_eq!(q_binomial(3, 0, 5).unwrap(), big(1));
        assert!(q_binomial(2, 3, 3).is_err());
        assert!(q_binomial(2, 1, 1).is_err());
    }
}
