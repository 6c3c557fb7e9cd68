//! Explicit codes: the Pauli code, extraspecial-group codes over prime
//! fields and mutually unbiased bases.

mod extraspecial;
mod mub;
mod pauli;
mod symplectic;

pub use extraspecial::{extraspecial_code, extraspecial_size, PauliOps, EIGEN_TOL, MAX_FIELD_DIM};
pub use mub::{mub_code, MAX_MUB_PRIME};
pub use pauli::{pauli_code, pauli_word, MAX_PAULI_K};
pub use symplectic::{enumerate_isotropic, isotropic_count, IsotropicSubspace, SymplecticVector, MAX_ISOTROPIC};

use nalgebra::linalg::SymmetricEigen;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Largest total number of stored basis entries in a constructed code.
pub const MAX_CODE_ENTRIES: usize = 1 << 25;

pub(crate) fn check_odd_prime(p: u64) -> Result<()> {
    let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    if !prime || p == 2 {
        return Err(Error::OutOfRange(format!("{p} is not an odd prime")));
    }
    Ok(())
}

pub(crate) fn check_code_entries(members: u128, n: usize, m: usize) -> Result<()> {
    let entries = members * n as u128 * m as u128;
    if entries > MAX_CODE_ENTRIES as u128 {
        return Err(Error::SizeLimit(format!(
            "code would hold {members} subspaces of C^{n} ({entries} basis entries, limit {MAX_CODE_ENTRIES})"
        )));
    }
    Ok(())
}

/// Eigenvectors of a Hermitian matrix whose eigenvalues satisfy `keep`, in
/// order of increasing column index of the decomposition.
pub(crate) fn hermitian_eigenvectors(h: CMatrix, keep: impl Fn(f64) -> bool) -> (Vec<f64>, CMatrix) {
    let eig = SymmetricEigen::new(h);
    let cols: Vec<usize> = (0..eig.eigenvalues.len()).filter(|&i| keep(eig.eigenvalues[i])).collect();
    let vectors = CMatrix::from_fn(eig.eigenvectors.nrows(), cols.len(), |r, c| eig.eigenvectors[(r, cols[c])]);
    (eig.eigenvalues.iter().cloned().collect(), vectors)
}
