use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

/// Default tolerance for floating-point checks throughout the crate.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Singular values at or below this are treated as rank loss.
pub const RANK_THRESHOLD: f64 = 1e-10;

/// An `m`-dimensional subspace of `C^n`, stored as an `n x m` matrix with
/// orthonormal columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    basis: CMatrix,
}

impl Subspace {
    /// Wraps a basis that is already orthonormal, checking it entrywise
    /// against `tol`.
    pub fn new(basis: CMatrix, tol: f64) -> Result<Self> {
        let (n, m) = basis.shape();
        if m == 0 || n == 0 {
            return Err(Error::DimensionMismatch(format!("empty basis {n}x{m}")));
        }
        if m > n {
            return Err(Error::DimensionMismatch(format!("rank {m} exceeds ambient dimension {n}")));
        }
        let deviation = orthonormality_deviation(&basis);
        if deviation > tol {
            return Err(Error::NotOrthonormal { deviation, tol });
        }
        Ok(Subspace { basis })
    }

    /// Orthonormalizes the column span of `raw`.
    pub fn from_basis(raw: &CMatrix) -> Result<Self> {
        let (n, m) = raw.shape();
        if m == 0 || n == 0 {
            return Err(Error::DimensionMismatch(format!("empty basis {n}x{m}")));
        }
        if m > n {
            return Err(Error::DimensionMismatch(format!("rank {m} exceeds ambient dimension {n}")));
        }
        let smallest = raw
            .clone()
            .singular_values()
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if !(smallest > RANK_THRESHOLD) {
            return Err(Error::RankDeficient {
                smallest,
                threshold: RANK_THRESHOLD,
            });
        }
        Ok(Subspace {
            basis: gram_schmidt(raw),
        })
    }

    pub(crate) fn from_orthonormal_unchecked(basis: CMatrix) -> Self {
        Subspace { basis }
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.basis.nrows()
    }

    /// Rank of the subspace.
    pub fn m(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn into_basis(self) -> CMatrix {
        self.basis
    }

    /// The orthogonal projection `P = M M^*`.
    pub fn projection(&self) -> CMatrix {
        &self.basis * self.basis.adjoint()
    }

    /// `P - (m/n) I`, the traceless part of the projection.
    pub fn traceless_projection(&self) -> CMatrix {
        let shift = self.m() as f64 / self.n() as f64;
        let mut p = self.projection();
        for i in 0..self.n() {
            p[(i, i)] -= C64::new(shift, 0.0);
        }
        p
    }

    /// The orthogonal complement, an `(n - m)`-dimensional subspace.
    pub fn complement(&self) -> Result<Subspace> {
        if self.m() == self.n() {
            return Err(Error::DimensionMismatch("complement of the whole space is zero".into()));
        }
        let full = complete_basis(&self.basis);
        Ok(Subspace {
            basis: full.columns(self.m(), self.n() - self.m()).into_owned(),
        })
    }

    /// Image of the subspace under a unitary `u`.
    pub fn transformed(&self, u: &CMatrix) -> Result<Subspace> {
        if u.nrows() != self.n() || u.ncols() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "unitary is {}x{}, subspace lives in C^{}",
                u.nrows(),
                u.ncols(),
                self.n()
            )));
        }
        Ok(Subspace {
            basis: gram_schmidt(&(u * &self.basis)),
        })
    }
}

/// Max entrywise distance of `M^* M` from the identity.
pub fn orthonormality_deviation(basis: &CMatrix) -> f64 {
    let g = basis.adjoint() * basis;
    let mut worst = 0.0f64;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)] - C64::new(target, 0.0)).norm());
        }
    }
    worst
}

/// Modified Gram-Schmidt with one round of reorthogonalization.
/// Assumes full column rank.
pub(crate) fn gram_schmidt(raw: &CMatrix) -> CMatrix {
    let (n, m) = raw.shape();
    let mut q = CMatrix::zeros(n, m);
    for j in 0..m {
        let mut v = raw.column(j).into_owned();
        for _ in 0..2 {
            for k in 0..j {
                let qk = q.column(k);
                let coeff = qk.dotc(&v);
                v -= qk * coeff;
            }
        }
        let norm = v.norm();
        q.set_column(j, &(v / C64::new(norm, 0.0)));
    }
    q
}

/// Extends an orthonormal `n x m` basis to an `n x n` unitary whose first
/// `m` columns are the given ones. Standard basis vectors are added
/// greedily by largest residual.
pub(crate) fn complete_basis(basis: &CMatrix) -> CMatrix {
    let (n, m) = basis.shape();
    let mut q = CMatrix::zeros(n, n);
    for j in 0..m {
        q.set_column(j, &basis.column(j));
    }
    let mut filled = m;
    while filled < n {
        let mut best: Option<(f64, nalgebra::DVector<C64>)> = None;
        for e in 0..n {
            let mut v = nalgebra::DVector::<C64>::zeros(n);
            v[e] = C64::new(1.0, 0.0);
            for _ in 0..2 {
                for k in 0..filled {
                    let qk = q.column(k);
                    let coeff = qk.dotc(&v);
                    v -= qk * coeff;
                }
            }
            let norm = v.norm();
            if best.as_ref().is_none_or(|(b, _)| norm > *b) {
                best = Some((norm, v));
            }
        }
        let (norm, v) = best.expect("n > 0");
        q.set_column(filled, &(v / C64::new(norm, 0.0)));
        filled += 1;
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn identity_columns_are_kept() {
        let raw = CMatrix::identity(5, 2);
        let s = Subspace::from_basis(&raw).unwrap();
        assert_eq!(s.basis(), &raw);
    }

    #[test]
    fn scaling_is_removed() {
        let raw = CMatrix::from_row_slice(3, 1, &[c(0.0, 2.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let s = Subspace::from_basis(&raw).unwrap();
        assert!((s.basis()[(0, 0)] - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn rank_deficient_is_rejected() {
        let raw = CMatrix::from_row_slice(3, 2, &[c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(Subspace::from_basis(&raw), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn too_many_columns_is_rejected() {
        let raw = CMatrix::identity(2, 3);
        assert!(matches!(Subspace::from_basis(&raw), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn non_orthonormal_basis_is_rejected() {
        let raw = CMatrix::from_element(2, 1, c(1.0, 0.0));
        assert!(matches!(Subspace::new(raw, 1e-8), Err(Error::NotOrthonormal { .. })));
    }

    #[test]
    fn complement_is_orthogonal() {
        let raw = CMatrix::from_row_slice(3, 1, &[c(1.0, 0.0), c(1.0, 1.0), c(0.0, -1.0)]);
        let s = Subspace::from_basis(&raw).unwrap();
        let perp = s.complement().unwrap();
        assert_eq!(perp.m(), 2);
        let cross = s.basis().adjoint() * perp.basis();
        assert!(cross.norm() < 1e-14);
        assert!(orthonormality_deviation(perp.basis()) < 1e-14);
    }
}
