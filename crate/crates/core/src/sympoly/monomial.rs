use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::dims::binomial;
use super::rational::{to_f64, Rational};

/// Scalars a polynomial can be evaluated at.
pub trait Scalar:
    Clone
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(r: &Rational) -> Self;

    /// Pivot preference for elimination; larger is better, zero means
    /// unusable.
    fn pivot_weight(&self) -> f64;
}

impl Scalar for f64 {
    fn from_rational(r: &Rational) -> Self {
        to_f64(r)
    }

    fn pivot_weight(&self) -> f64 {
        self.abs()
    }
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

/// Determinant by Gaussian elimination with pivoting by `pivot_weight`.
pub(crate) fn determinant<T: Scalar>(mut rows: Vec<Vec<T>>) -> T {
    let size = rows.len();
    let mut det = T::one();
    for col in 0..size {
        let (pivot, weight) = (col..size)
            .map(|r| (r, rows[r][col].pivot_weight()))
            .fold((col, -1.0), |best, cand| if cand.1 > best.1 { cand } else { best });
        if weight == 0.0 {
            return T::zero();
        }
        if pivot != col {
            rows.swap(pivot, col);
            det = -det;
        }
        let p = rows[col][col].clone();
        det = det * p.clone();
        for r in (col + 1)..size {
            let factor = rows[r][col].clone() / p.clone();
            for c in col..size {
                let delta = factor.clone() * rows[col][c].clone();
                rows[r][c] = rows[r][c].clone() - delta;
            }
        }
    }
    det
}

/// A polynomial in a fixed number of variables with exact rational
/// coefficients, keyed by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialPoly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MonomialPoly {
    pub fn zero(vars: usize) -> Self {
        MonomialPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    pub fn variable(vars: usize, i: usize) -> Self {
        let mut exps = vec![0; vars];
        exps[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(exps, Rational::one());
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        debug_assert_eq!(exps.len(), self.vars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        MonomialPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), -v.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.vars);
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let exps = ka.iter().zip(kb.iter()).map(|(a, b)| a + b).collect();
                out.add_term(exps, va * vb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(self.vars, Rational::one()), |acc, _| acc.mul(self))
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|k| k.iter().sum()).max().unwrap_or(0)
    }

    /// The polynomial `p(y_1 + 1, ..., y_m + 1)`.
    pub fn shifted_by_one(&self) -> Self {
        let mut out = Self::zero(self.vars);
        for (exps, c) in &self.terms {
            // Expand prod_i (y_i + 1)^{e_i} by the binomial theorem.
            let mut partial: Vec<(Vec<u32>, Rational)> = vec![(Vec::new(), c.clone())];
            for &e in exps {
                let mut next = Vec::with_capacity(partial.len() * (e as usize + 1));
                for (prefix, coeff) in &partial {
                    for j in 0..=e {
                        let mut p = prefix.clone();
                        p.push(j);
                        let b = Rational::from_integer(binomial(e as u64, j as u64));
                        next.push((p, coeff * b));
                    }
                }
                partial = next;
            }
            for (k, v) in partial {
                out.add_term(k, v);
            }
        }
        out
    }

    pub fn evaluate<T: Scalar>(&self, point: &[T]) -> T {
        assert_eq!(point.len(), self.vars, "evaluation point has wrong length");
        let mut total = T::zero();
        for (exps, c) in &self.terms {
            let mut term = T::from_rational(c);
            for (x, &e) in point.iter().zip(exps.iter()) {
                for _ in 0..e {
                    term = term * x.clone();
                }
            }
            total = total + term;
        }
        total
    }

    /// Whether the coefficient of every monomial is invariant under
    /// permuting exponents.
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(exps, c)| {
            let mut sorted = exps.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            &self.coeff(&sorted) == c
                && all_permutations(&sorted).iter().all(|perm| &self.coeff(perm) == c)
        })
    }
}

/// Distinct permutations of an exponent vector.
pub(crate) fn all_permutations(exps: &[u32]) -> Vec<Vec<u32>> {
    let mut sorted = exps.to_vec();
    sorted.sort_unstable();
    let mut out = vec![sorted.clone()];
    // Next-permutation iteration over a multiset.
    loop {
        let n = sorted.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && sorted[i - 1] >= sorted[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while sorted[j] <= sorted[i - 1] {
            j -= 1;
        }
        sorted.swap(i - 1, j);
        sorted[i..].reverse();
        out.push(sorted.clone());
    }
    out
}

/// Complete homogeneous symmetric polynomial `h_k` in `vars` variables.
pub(crate) fn complete_homogeneous(k: i64, vars: usize) -> MonomialPoly {
    let mut out = MonomialPoly::zero(vars);
    if k < 0 {
        return out;
    }
    fn fill(remaining: u32, slot: usize, current: &mut Vec<u32>, out: &mut MonomialPoly) {
        if slot + 1 == current.len() {
            current[slot] = remaining;
            out.add_term(current.clone(), Rational::one());
            return;
        }
        for e in 0..=remaining {
            current[slot] = e;
            fill(remaining - e, slot + 1, current, out);
        }
    }
    fill(k as u32, 0, &mut vec![0; vars], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sympoly::rational::rat;

    #[test]
    fn shift_univariate() {
        // (y+1)^2 = y^2 + 2y + 1
        let y = MonomialPoly::variable(1, 0);
        let shifted = y.pow(2).shifted_by_one();
        assert_eq!(shifted.coeff(&[2]), rat(1));
        assert_eq!(shifted.coeff(&[1]), rat(2));
        assert_eq!(shifted.coeff(&[0]), rat(1));
    }

    #[test]
    fn complete_homogeneous_counts() {
        let h2 = complete_homogeneous(2, 3);
        assert_eq!(h2.terms().len(), 6);
        assert!(h2.is_symmetric());
        assert!(complete_homogeneous(-1, 2).is_zero());
        assert_eq!(complete_homogeneous(0, 2).coeff(&[0, 0]), rat(1));
    }

    #[test]
    fn permutations_of_multiset() {
        assert_eq!(all_permutations(&[1, 0, 0]).len(), 3);
        assert_eq!(all_permutations(&[2, 1, 0]).len(), 6);
    }

    #[test]
    fn determinant_exact_and_float() {
        let m = vec![vec![rat(2), rat(1)], vec![rat(4), rat(3)]];
        assert_eq!(determinant(m), rat(2));
        let f = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        assert_eq!(determinant(f), -1.0);
    }

    #[test]
    fn asymmetric_detected() {
        let p = MonomialPoly::variable(2, 0);
        assert!(!p.is_symmetric());
        assert!(p.add(&MonomialPoly::variable(2, 1)).is_symmetric());
    }
}
