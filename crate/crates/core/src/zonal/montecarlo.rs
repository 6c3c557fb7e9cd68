use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::polynomial::{check_grassmannian, CompiledPoly, ZonalBasis};
use crate::error::{Error, Result};
use crate::linalg::{haar_subspace_with, principal_angles, Subspace};
use crate::sympoly::{Partition, SymmetricPolynomial};

/// Samples per independently seeded block.
pub const MC_BLOCK: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: usize,
}

/// Averages `integrand` over `samples` Haar-random `m`-dimensional subspaces
/// of `C^n`. Block `i` draws from stream `i` of a generator seeded with
/// `seed`, so the result does not depend on the number of worker threads.
pub fn mc_average<F>(n: usize, m: usize, samples: usize, seed: u64, integrand: F) -> Result<McEstimate>
where
    F: Fn(&Subspace) -> Result<f64> + Sync,
{
    if samples == 0 {
        return Err(Error::OutOfRange("Monte Carlo needs at least one sample".into()));
    }
    let blocks = samples.div_ceil(MC_BLOCK);
    let partial: Vec<(f64, f64)> = (0..blocks)
        .into_par_iter()
        .map(|block| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(block as u64);
            let count = MC_BLOCK.min(samples - block * MC_BLOCK);
            let (mut sum, mut sumsq) = (0.0, 0.0);
            for _ in 0..count {
                let c = haar_subspace_with(&mut rng, n, m)?;
                let v = integrand(&c)?;
                sum += v;
                sumsq += v * v;
            }
            Ok((sum, sumsq))
        })
        .collect::<Result<_>>()?;
    let (sum, sumsq) = partial.iter().fold((0.0, 0.0), |acc, p| (acc.0 + p.0, acc.1 + p.1));
    let count = samples as f64;
    let mean = sum / count;
    let var = if samples > 1 {
        ((sumsq - count * mean * mean) / (count - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(McEstimate {
        estimate: mean,
        stderr: (var / count).sqrt(),
        samples,
    })
}

/// The span of the first `m` standard basis vectors.
pub fn reference_subspace(n: usize, m: usize) -> Result<Subspace> {
    Subspace::from_basis(&crate::linalg::CMatrix::identity(n, m))
}

/// Monte Carlo estimate of `<Z_mu, Z_nu>` for normalized zonal functions
/// anchored at one fixed point.
pub fn mc_zonal_inner(
    mu: &Partition,
    nu: &Partition,
    m: usize,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    check_grassmannian(m, n)?;
    let degree = mu.size().max(nu.size());
    let basis = ZonalBasis::with_degree(m, n, degree.max(super::STABLE_DEGREE), degree > super::STABLE_DEGREE)?;
    let f = CompiledPoly::new(basis.normalized(mu)?.poly())?;
    let g = CompiledPoly::new(basis.normalized(nu)?.poly())?;
    let a = reference_subspace(n, m)?;
    mc_average(n, m, samples, seed, |c| {
        let y = principal_angles(&a, c)?;
        Ok(f.evaluate(y.values()) * g.evaluate(y.values()))
    })
}

/// Monte Carlo estimate of `integral f(y(a, c)) g(y(b, c)) dc`.
pub fn mc_pair_integral(
    f: &SymmetricPolynomial,
    a: &Subspace,
    g: &SymmetricPolynomial,
    b: &Subspace,
    samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    let (n, m) = (a.n(), a.m());
    if b.n() != n || b.m() != m || f.m() != m || g.m() != m {
        return Err(Error::DimensionMismatch("pair integral needs matching subspaces and polynomials".into()));
    }
    let f = CompiledPoly::new(f)?;
    let g = CompiledPoly::new(g)?;
    mc_average(n, m, samples, seed, |c| {
        let ya = principal_angles(a, c)?;
        let yb = principal_angles(b, c)?;
        Ok(f.evaluate(ya.values()) * g.evaluate(yb.values()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_integrand_is_exact() {
        let e = mc_zonal_inner(&Partition::empty(), &Partition::empty(), 2, 4, 1000, 3).unwrap();
        assert_eq!(e.estimate, 1.0);
        assert_eq!(e.stderr, 0.0);
    }

    #[test]
    fn thread_count_does_not_matter() {
        let mu = Partition::row(1);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| mc_zonal_inner(&mu, &mu, 2, 4, 10_000, 11).unwrap())
        };
        assert_eq!(run(1), run(4));
    }
}
