use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::symplectic::{enumerate_isotropic, isotropic_count, IsotropicSubspace};
use super::{check_code_entries, check_odd_prime, hermitian_eigenvectors};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, Code, Subspace, C64, DEFAULT_TOL};

/// Largest supported ambient dimension `p^n`.
pub const MAX_FIELD_DIM: u64 = 2048;

/// Spectral projector eigenvalues must lie this close to 0 or 1.
pub const EIGEN_TOL: f64 = 1e-8;

/// The shift and phase operators `X(a): e_v -> e_{v+a}` and
/// `Y(b): e_v -> w^{b.v} e_v` on `C^{p^n}`, with `w = exp(2 pi i / p)`.
#[derive(Clone, Debug)]
pub struct PauliOps {
    p: u64,
    n: usize,
    dim: usize,
    roots: Vec<C64>,
}

impl PauliOps {
    pub fn new(p: u64, n: usize) -> Result<Self> {
        check_odd_prime(p)?;
        let dim = p
            .checked_pow(n as u32)
            .filter(|&d| d <= MAX_FIELD_DIM)
            .ok_or_else(|| Error::SizeLimit(format!("{p}^{n} exceeds the ambient limit {MAX_FIELD_DIM}")))?;
        let roots = (0..p).map(|j| C64::from_polar(1.0, 2.0 * PI * j as f64 / p as f64)).collect();
        Ok(PauliOps {
            p,
            n,
            dim: dim as usize,
            roots,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `w^j`.
    pub fn root(&self, j: u64) -> C64 {
        self.roots[(j % self.p) as usize]
    }

    /// Index of `v` in the standard basis; the first coordinate is most
    /// significant.
    pub fn index(&self, v: &[u64]) -> usize {
        v.iter().fold(0, |acc, &x| acc * self.p as usize + (x % self.p) as usize)
    }

    pub fn vector(&self, mut index: usize) -> Vec<u64> {
        let mut v = vec![0; self.n];
        for slot in v.iter_mut().rev() {
            *slot = (index % self.p as usize) as u64;
            index /= self.p as usize;
        }
        v
    }

    fn check_len(&self, v: &[u64]) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch(format!("vector of length {} over F_p^{}", v.len(), self.n)));
        }
        Ok(())
    }

    /// For each basis index `v`: the image index of `X(a)Y(b)` and the
    /// exponent of its phase.
    fn action(&self, a: &[u64], b: &[u64]) -> Vec<(usize, u64)> {
        (0..self.dim)
            .map(|i| {
                let v = self.vector(i);
                let shifted: Vec<u64> = v.iter().zip(a).map(|(x, y)| (x + y) % self.p).collect();
                let phase = v.iter().zip(b).fold(0, |acc, (x, y)| (acc + x * y) % self.p);
                (self.index(&shifted), phase)
            })
            .collect()
    }

    /// The matrix of `X(a) Y(b)`.
    pub fn xy(&self, a: &[u64], b: &[u64]) -> Result<CMatrix> {
        self.check_len(a)?;
        self.check_len(b)?;
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for (col, (row, phase)) in self.action(a, b).into_iter().enumerate() {
            out[(row, col)] = self.root(phase);
        }
        Ok(out)
    }

    pub fn x(&self, a: &[u64]) -> Result<CMatrix> {
        self.xy(a, &vec![0; self.n])
    }

    pub fn y(&self, b: &[u64]) -> Result<CMatrix> {
        self.xy(&vec![0; self.n], b)
    }

    /// `X(a) Y(b) Q` without forming the operator.
    pub fn apply(&self, a: &[u64], b: &[u64], q: &CMatrix) -> Result<CMatrix> {
        self.check_len(a)?;
        self.check_len(b)?;
        if q.nrows() != self.dim {
            return Err(Error::DimensionMismatch(format!("{} rows, operators act on C^{}", q.nrows(), self.dim)));
        }
        Ok(self.apply_action(&self.action(a, b), q))
    }

    fn apply_action(&self, action: &[(usize, u64)], q: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(q.nrows(), q.ncols());
        for (src, &(dst, phase)) in action.iter().enumerate() {
            let w = self.root(phase);
            for c in 0..q.ncols() {
                out[(dst, c)] = w * q[(src, c)];
            }
        }
        out
    }

    /// Joint eigenspaces of `X(a)Y(b)` over the basis of `w`, each paired
    /// with its tuple of eigenvalue exponents, in lexicographic order of the
    /// tuples.
    pub fn joint_eigenspaces(&self, w: &IsotropicSubspace) -> Result<Vec<(Vec<u64>, CMatrix)>> {
        let mut blocks = vec![(Vec::new(), CMatrix::identity(self.dim, self.dim))];
        for v in w.basis() {
            let action = self.action(v.a(), v.b());
            let mut next = Vec::new();
            for (tuple, q) in blocks {
                let mut powers = vec![q.clone()];
                for s in 1..self.p as usize {
                    let prev = &powers[s - 1];
                    powers.push(self.apply_action(&action, prev));
                }
                let mut found = 0;
                for l in 0..self.p {
                    let mut pq = CMatrix::zeros(q.nrows(), q.ncols());
                    for (s, power) in powers.iter().enumerate() {
                        let coeff = self.root((self.p - l) * s as u64 % self.p) / self.p as f64;
                        pq += power * coeff;
                    }
                    let h = q.adjoint() * pq;
                    let h = (&h + h.adjoint()) * C64::new(0.5, 0.0);
                    let (values, vecs) = hermitian_eigenvectors(h, |e| e > 0.5);
                    if let Some(bad) = values.iter().find(|&&e| e.abs() > EIGEN_TOL && (e - 1.0).abs() > EIGEN_TOL) {
                        return Err(Error::NumericalDegeneracy(format!(
                            "projector eigenvalue {bad} for operator {v} is neither 0 nor 1"
                        )));
                    }
                    if vecs.ncols() > 0 {
                        found += vecs.ncols();
                        let mut t = tuple.clone();
                        t.push(l);
                        next.push((t, &q * vecs));
                    }
                }
                if found != q.ncols() {
                    return Err(Error::NumericalDegeneracy(format!(
                        "eigenspaces of {v} cover {found} of {} dimensions",
                        q.ncols()
                    )));
                }
            }
            blocks = next;
        }
        Ok(blocks)
    }
}

/// `p^{n-k} [n n-k]_p prod_{i=k+1}^{n} (p^i + 1)`.
pub fn extraspecial_size(p: u64, n: usize, k: usize) -> Result<BigInt> {
    if k >= n {
        return Err(Error::OutOfRange(format!("need k < n, got k = {k}, n = {n}")));
    }
    Ok(num_traits::pow(BigInt::from(p), n - k) * isotropic_count(p, n, n - k)?)
}

/// The `p^k`-dimensional joint eigenspaces of the abelian subgroups lying
/// over the totally isotropic `(n - k)`-dimensional subspaces of
/// `F_p^{2n}`, as a code in `G(p^k, p^n)`.
pub fn extraspecial_code(p: u64, n: usize, k: usize) -> Result<Code> {
    let ops = PauliOps::new(p, n)?;
    let size = extraspecial_size(p, n, k)?;
    let rank = p.pow(k as u32) as usize;
    let members = size.to_u128().unwrap_or(u128::MAX);
    check_code_entries(members, ops.dim(), rank)?;
    let subspaces = enumerate_isotropic(p, n, n - k)?;
    let blocks: Vec<Vec<(String, Subspace)>> = subspaces
        .par_iter()
        .enumerate()
        .map(|(i, w)| {
            let spaces = ops.joint_eigenspaces(w)?;
            if spaces.len() != p.pow((n - k) as u32) as usize || spaces.iter().any(|(_, q)| q.ncols() != rank) {
                return Err(Error::NumericalDegeneracy(format!("isotropic subspace {w} split unevenly")));
            }
            spaces
                .into_iter()
                .map(|(tuple, q)| {
                    let label = format!(
                        "W{i}:{}",
                        tuple.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
                    );
                    Ok((label, Subspace::new(q, DEFAULT_TOL)?))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let (labels, members): (Vec<String>, Vec<Subspace>) = blocks.into_iter().flatten().unzip();
    Code::unchecked(ops.dim(), rank, members)?.with_labels(labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_examples() {
        let ops = PauliOps::new(3, 1).unwrap();
        assert_eq!(ops.x(&[0]).unwrap(), CMatrix::identity(3, 3));
        let y = ops.y(&[1]).unwrap();
        for j in 0..3 {
            assert!((y[(j, j)] - ops.root(j as u64)).norm() < 1e-15);
        }
    }

    #[test]
    fn commutation_phase() {
        let ops = PauliOps::new(3, 2).unwrap();
        let (a, b, a2, b2) = ([1, 2], [0, 1], [2, 2], [1, 1]);
        let lhs = ops.xy(&a, &b).unwrap() * ops.xy(&a2, &b2).unwrap();
        let sum = |x: &[u64], y: &[u64]| -> Vec<u64> { x.iter().zip(y).map(|(u, v)| (u + v) % 3).collect() };
        let phase = b.iter().zip(&a2).map(|(x, y)| x * y).sum::<u64>();
        let rhs = ops.xy(&sum(&a, &a2), &sum(&b, &b2)).unwrap() * ops.root(phase);
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn apply_matches_matrix() {
        let ops = PauliOps::new(5, 1).unwrap();
        let q = CMatrix::from_fn(5, 2, |r, c| C64::new(r as f64, c as f64 + 1.0));
        let direct = ops.xy(&[2], &[3]).unwrap() * &q;
        assert!((ops.apply(&[2], &[3], &q).unwrap() - direct).norm() < 1e-12);
    }

    #[test]
    fn small_code() {
        let code = extraspecial_code(3, 2, 1).unwrap();
        assert_eq!(code.len(), 120);
        assert_eq!(code.m(), 3);
        let g = code.gram_matrix();
        for i in 0..code.len() {
            for j in (i + 1)..code.len() {
                let v = g[(i, j)];
                assert!(v.abs() < 1e-8 || (v - 1.0).abs() < 1e-8, "{v}");
            }
        }
    }

    #[test]
    fn limits() {
        assert!(matches!(PauliOps::new(3, 7), Err(Error::SizeLimit(_))));
        assert!(extraspecial_code(3, 2, 2).is_err());
    }
}
