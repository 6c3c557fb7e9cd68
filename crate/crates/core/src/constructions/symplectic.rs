use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::check_odd_prime;
use crate::error::{Error, Result};
use crate::sympoly::q_binomial;

/// Largest number of isotropic subspaces that will be enumerated.
pub const MAX_ISOTROPIC: u64 = 1_000_000;

/// A pair `(a, b)` in `F_p^n x F_p^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymplecticVector {
    p: u64,
    a: Vec<u64>,
    b: Vec<u64>,
}

impl SymplecticVector {
    pub fn new(p: u64, a: &[i64], b: &[i64]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch(format!("halves of length {} and {}", a.len(), b.len())));
        }
        let reduce = |v: &[i64]| v.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect();
        Ok(SymplecticVector {
            p,
            a: reduce(a),
            b: reduce(b),
        })
    }

    fn from_coords(p: u64, coords: &[u64]) -> Self {
        let n = coords.len() / 2;
        SymplecticVector {
            p,
            a: coords[..n].to_vec(),
            b: coords[n..].to_vec(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[u64] {
        &self.a
    }

    pub fn b(&self) -> &[u64] {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().chain(&self.b).all(|&x| x == 0)
    }

    /// `a . b' - a' . b mod p`.
    pub fn form(&self, other: &Self) -> u64 {
        let p = self.p;
        let dot = |x: &[u64], y: &[u64]| x.iter().zip(y).fold(0, |acc, (u, v)| (acc + u * v) % p);
        (dot(&self.a, &other.b) + p - dot(&other.a, &self.b)) % p
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.p;
        let sum = |x: &[u64], y: &[u64]| x.iter().zip(y).map(|(u, v)| (u + v) % p).collect();
        SymplecticVector {
            p,
            a: sum(&self.a, &other.a),
            b: sum(&self.b, &other.b),
        }
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.p;
        SymplecticVector {
            p,
            a: self.a.iter().map(|x| x * c % p).collect(),
            b: self.b.iter().map(|x| x * c % p).collect(),
        }
    }
}

impl fmt::Display for SymplecticVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({}|{})", join(&self.a), join(&self.b))
    }
}

/// A totally isotropic subspace of `F_p^{2n}`, stored by its reduced row
/// echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IsotropicSubspace {
    p: u64,
    n: usize,
    basis: Vec<SymplecticVector>,
}

impl IsotropicSubspace {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SymplecticVector] {
        &self.basis
    }

    /// All `p^d` elements, in lexicographic order of their coordinates on
    /// the echelon basis.
    pub fn elements(&self) -> Vec<SymplecticVector> {
        let zero = SymplecticVector {
            p: self.p,
            a: vec![0; self.n],
            b: vec![0; self.n],
        };
        self.basis.iter().fold(vec![zero], |acc, v| {
            acc.iter()
                .flat_map(|w| (0..self.p).map(move |c| w.add(&v.scale(c))))
                .collect()
        })
    }
}

impl fmt::Display for IsotropicSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, v) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ">")
    }
}

/// The number of totally isotropic `d`-dimensional subspaces of `F_p^{2n}`:
/// `[n d]_p prod_{i=n-d+1}^{n} (p^i + 1)`.
pub fn isotropic_count(p: u64, n: usize, d: usize) -> Result<BigInt> {
    if d > n {
        return Err(Error::OutOfRange(format!("isotropic dimension {d} exceeds n = {n}")));
    }
    let mut count = q_binomial(n as u32, d as u32, p)?;
    for i in (n - d + 1)..=n {
        count *= num_traits::pow(BigInt::from(p), i) + 1u32;
    }
    Ok(count)
}

struct Search<'a> {
    p: u64,
    n: usize,
    pivots: &'a [usize],
    rows: Vec<SymplecticVector>,
    out: &'a mut Vec<IsotropicSubspace>,
}

impl Search<'_> {
    fn row(&mut self, i: usize) {
        if i == self.pivots.len() {
            self.out.push(IsotropicSubspace {
                p: self.p,
                n: self.n,
                basis: self.rows.clone(),
            });
            return;
        }
        let free: Vec<usize> = ((self.pivots[i] + 1)..2 * self.n)
            .filter(|c| !self.pivots.contains(c))
            .collect();
        let mut coords = vec![0u64; 2 * self.n];
        coords[self.pivots[i]] = 1;
        let mut digits = vec![0u64; free.len()];
        loop {
            for (slot, &c) in free.iter().enumerate() {
                coords[c] = digits[slot];
            }
            let v = SymplecticVector::from_coords(self.p, &coords);
            if self.rows.iter().all(|r| r.form(&v) == 0) {
                self.rows.push(v);
                self.row(i + 1);
                self.rows.pop();
            }
            // Next assignment in lexicographic order.
            let mut pos = free.len();
            loop {
                if pos == 0 {
                    return;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < self.p {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }
}

fn pivot_sets(total: usize, d: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, total: usize, d: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == d {
            out.push(prefix.clone());
            return;
        }
        for c in start..total {
            prefix.push(c);
            go(c + 1, total, d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(0, total, d, &mut Vec::new(), &mut out);
    out
}

/// All totally isotropic `d`-dimensional subspaces of `F_p^{2n}` in
/// canonical order: by pivot columns, then by echelon entries. The result
/// is checked against [`isotropic_count`].
pub fn enumerate_isotropic(p: u64, n: usize, d: usize) -> Result<Vec<IsotropicSubspace>> {
    check_odd_prime(p)?;
    let expected = isotropic_count(p, n, d)?;
    let expected = expected
        .to_u64()
        .filter(|&c| c <= MAX_ISOTROPIC)
        .ok_or_else(|| Error::SizeLimit(format!("{expected} isotropic subspaces exceed the limit {MAX_ISOTROPIC}")))?;
    let mut out = Vec::new();
    for pivots in pivot_sets(2 * n, d) {
        Search {
            p,
            n,
            pivots: &pivots,
            rows: Vec::new(),
            out: &mut out,
        }
        .row(0);
    }
    if out.len() as u64 != expected {
        return Err(Error::NumericalHealth(format!(
            "enumerated {} isotropic subspaces, formula gives {expected}",
            out.len()
        )));
    }
    Ok(out)
}
