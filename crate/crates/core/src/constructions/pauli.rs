use nalgebra::Complex;
use rayon::prelude::*;

use super::hermitian_eigenvectors;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, Code, Subspace, C64, DEFAULT_TOL};

/// Largest supported number of qubits (`n = 2^k <= 64`).
pub const MAX_PAULI_K: u32 = 6;

const LETTERS: [char; 4] = ['I', 'X', 'Y', 'Z'];

fn single(letter: u8) -> CMatrix {
    let (o, z, i) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 1.0));
    let entries = match letter {
        0 => [o, z, z, o],
        1 => [z, o, o, z],
        2 => [z, -i, i, z],
        3 => [o, z, z, -o],
        _ => panic!("Pauli letter out of range"),
    };
    CMatrix::from_row_slice(2, 2, &entries)
}

/// The tensor product of single-qubit Paulis `I, X, Y, Z` (codes 0 to 3).
pub fn pauli_word(word: &[u8]) -> CMatrix {
    word.iter()
        .fold(CMatrix::from_element(1, 1, Complex::new(1.0, 0.0)), |acc, &l| acc.kronecker(&single(l)))
}

fn word_from_index(mut index: usize, k: usize) -> Vec<u8> {
    let mut word = vec![0u8; k];
    for slot in word.iter_mut().rev() {
        *slot = (index % 4) as u8;
        index /= 4;
    }
    word
}

/// The `2(n^2 - 1)` half-dimensional subspaces `range((I + X)/2)` and
/// `range((I - X)/2)` for every non-identity Pauli word `X` on `k` qubits,
/// words in lexicographic order over `I < X < Y < Z`.
pub fn pauli_code(k: u32) -> Result<Code> {
    if k == 0 {
        return Err(Error::OutOfRange("the Pauli code needs k >= 1".into()));
    }
    if k > MAX_PAULI_K {
        return Err(Error::SizeLimit(format!("Pauli code with k = {k} exceeds n = 2^{MAX_PAULI_K}")));
    }
    let k = k as usize;
    let n = 1usize << k;
    let words = 1usize << (2 * k);
    let pairs: Vec<(Vec<String>, Vec<Subspace>)> = (1..words)
        .into_par_iter()
        .map(|index| {
            let word = word_from_index(index, k);
            let name: String = word.iter().map(|&l| LETTERS[l as usize]).collect();
            let x = pauli_word(&word);
            let (_, plus) = hermitian_eigenvectors(x.clone(), |e| e > 0.0);
            let (_, minus) = hermitian_eigenvectors(x, |e| e < 0.0);
            let plus = Subspace::new(plus, DEFAULT_TOL)?;
            let minus = Subspace::new(minus, DEFAULT_TOL)?;
            Ok((vec![format!("+{name}"), format!("-{name}")], vec![plus, minus]))
        })
        .collect::<Result<_>>()?;
    let (labels, members): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    let members: Vec<Subspace> = members.into_iter().flatten().collect();
    Code::unchecked(n, n / 2, members)?.with_labels(labels.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::trace_inner_product;

    #[test]
    fn qubit_code() {
        let code = pauli_code(1).unwrap();
        assert_eq!(code.len(), 6);
        let g = code.gram_matrix();
        for i in 0..6 {
            for j in 0..6 {
                if i != j {
                    let v = g[(i, j)];
                    assert!(v.abs() < 1e-9 || (v - 0.5).abs() < 1e-9, "{v}");
                }
            }
        }
    }

    #[test]
    fn members_have_half_rank() {
        let code = pauli_code(2).unwrap();
        assert_eq!(code.len(), 30);
        for s in code.iter() {
            assert_eq!(s.m(), 2);
            assert!((s.projection().trace().re - 2.0).abs() < 1e-12);
        }
        assert_eq!(code.labels().unwrap()[0], "+IX");
        assert!(trace_inner_product(code.member(0), code.member(1)).unwrap().abs() < 1e-9);
    }

    #[test]
    fn limits() {
        assert!(matches!(pauli_code(7), Err(Error::SizeLimit(_))));
        assert!(pauli_code(0).is_err());
    }
}
