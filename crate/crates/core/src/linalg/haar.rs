use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::subspace::{gram_schmidt, CMatrix, Subspace, C64};
use crate::error::{Error, Result};

/// Deterministic generator used for every seeded sampler in the crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n x m` matrix of i.i.d. standard complex Gaussians (unit variance).
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> CMatrix {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_fn(n, m, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re * scale, im * scale)
    })
}

/// Draws from the unitarily invariant measure on `G(m, n)`.
pub fn haar_subspace_with<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Result<Subspace> {
    if m == 0 || m > n {
        return Err(Error::DimensionMismatch(format!("need 1 <= m <= n, got m = {m}, n = {n}")));
    }
    // A Gaussian matrix has full rank with probability one.
    Ok(Subspace::from_orthonormal_unchecked(gram_schmidt(&complex_gaussian(rng, n, m))))
}

pub fn haar_subspace(n: usize, m: usize, seed: u64) -> Result<Subspace> {
    haar_subspace_with(&mut seeded_rng(seed), n, m)
}

/// Haar-random `n x n` unitary.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    gram_schmidt(&complex_gaussian(rng, n, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_subspace() {
        let a = haar_subspace(5, 2, 42).unwrap();
        let b = haar_subspace(5, 2, 42).unwrap();
        assert_eq!(a, b);
        let c = haar_subspace(5, 2, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn invalid_rank() {
        assert!(haar_subspace(3, 4, 0).is_err());
        assert!(haar_subspace(3, 0, 0).is_err());
    }
}
