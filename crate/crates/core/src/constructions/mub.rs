use std::f64::consts::PI;

use super::check_odd_prime;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, Code, Subspace, C64};

pub const MAX_MUB_PRIME: u64 = 101;

/// The `p + 1` mutually unbiased bases of `C^p` as `p(p + 1)` lines: the
/// standard basis, then for each `a` the vectors
/// `(w^{a s^2 + b s} / sqrt(p))_s`, `b = 0, ..., p - 1`.
pub fn mub_code(p: u64) -> Result<Code> {
    check_odd_prime(p)?;
    if p > MAX_MUB_PRIME {
        return Err(Error::SizeLimit(format!("p = {p} exceeds {MAX_MUB_PRIME}")));
    }
    let d = p as usize;
    let scale = 1.0 / (p as f64).sqrt();
    let mut members = Vec::with_capacity(d * (d + 1));
    let mut labels = Vec::with_capacity(d * (d + 1));
    for s in 0..d {
        let mut v = CMatrix::zeros(d, 1);
        v[(s, 0)] = C64::new(1.0, 0.0);
        members.push(Subspace::from_orthonormal_unchecked(v));
        labels.push(format!("e{s}"));
    }
    for a in 0..p {
        for b in 0..p {
            let v = CMatrix::from_fn(d, 1, |s, _| {
                let s = s as u64;
                let exponent = (a * s % p * s + b * s) % p;
                C64::from_polar(scale, 2.0 * PI * exponent as f64 / p as f64)
            });
            members.push(Subspace::from_orthonormal_unchecked(v));
            labels.push(format!("B{a}:{b}"));
        }
    }
    Code::unchecked(d, 1, members)?.with_labels(labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3() {
        let code = mub_code(3).unwrap();
        assert_eq!(code.len(), 12);
        let g = code.gram_matrix();
        for i in 0..12 {
            for j in 0..12 {
                if i == j {
                    continue;
                }
                let v = g[(i, j)];
                if i / 3 == j / 3 {
                    assert!(v.abs() < 1e-12);
                } else {
                    assert!((v - 1.0 / 3.0).abs() < 1e-9, "{v}");
                }
            }
        }
    }

    #[test]
    fn limits() {
        assert!(matches!(mub_code(103), Err(Error::SizeLimit(_))));
        assert!(mub_code(9).is_err());
    }
}
