use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::dims::weyl_dim;
use super::monomial::{complete_homogeneous, determinant, MonomialPoly, Scalar};
use super::partition::Partition;
use super::rational::{fmt_rational, Rational};
use crate::error::{Error, Result};

type SchurCache = Mutex<HashMap<(Partition, usize), Arc<MonomialPoly>>>;

fn schur_cache() -> &'static SchurCache {
    static CACHE: OnceLock<SchurCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn check_length(sigma: &Partition, m: usize) -> Result<()> {
    if sigma.len() > m {
        return Err(Error::LengthExceedsVariables {
            partition: sigma.to_string(),
            vars: m,
        });
    }
    Ok(())
}

/// Sign of a permutation given as an index vector.
fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(k - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, k - 1);
            out.push(p);
        }
    }
    out
}

/// Schur polynomial `s_sigma(y_1..y_m)` in the monomial basis, from the
/// Jacobi-Trudi determinant `det(h_{s_i - i + j})`.
pub fn schur_monomial(sigma: &Partition, m: usize) -> Result<Arc<MonomialPoly>> {
    check_length(sigma, m)?;
    let key = (sigma.clone(), m);
    if let Some(hit) = schur_cache().lock().expect("cache lock").get(&key) {
        return Ok(hit.clone());
    }
    let len = sigma.len();
    let mut h: HashMap<i64, MonomialPoly> = HashMap::new();
    let mut total = MonomialPoly::zero(m);
    for perm in permutations(len) {
        let mut term = MonomialPoly::constant(m, Rational::from_integer(BigInt::from(permutation_sign(&perm))));
        for (i, &j) in perm.iter().enumerate() {
            let k = sigma.part(i) as i64 - i as i64 + j as i64;
            let hk = h.entry(k).or_insert_with(|| complete_homogeneous(k, m));
            term = term.mul(hk);
            if term.is_zero() {
                break;
            }
        }
        total = total.add(&term);
    }
    let total = Arc::new(total);
    schur_cache()
        .lock()
        .expect("cache lock")
        .insert(key, total.clone());
    Ok(total)
}

/// `s_sigma(1, ..., 1)` with `m` ones.
pub fn schur_at_ones(sigma: &Partition, m: usize) -> Result<BigInt> {
    check_length(sigma, m)?;
    let weight: Vec<i64> = sigma.padded(m).into_iter().map(|p| p as i64).collect();
    weyl_dim(&weight)
}

/// Evaluates `s_sigma` at `point` through divided differences of monomials,
/// which stays well defined when coordinates repeat:
/// `s_sigma(y) = (-1)^{m(m-1)/2} det[h_{s_j + m - j - i + 1}(y_1..y_i)]`.
pub fn schur_eval<T: Scalar>(sigma: &Partition, point: &[T]) -> Result<T> {
    let m = point.len();
    check_length(sigma, m)?;
    if m == 0 {
        return Ok(T::one());
    }
    let parts = sigma.padded(m);
    let max_k = parts[0] as usize + m;
    // table[i][k] = h_k(y_1..y_i)
    let mut table = vec![vec![T::zero(); max_k + 1]; m + 1];
    table[0][0] = T::one();
    for i in 1..=m {
        let y = point[i - 1].clone();
        table[i][0] = T::one();
        for k in 1..=max_k {
            table[i][k] = table[i - 1][k].clone() + y.clone() * table[i][k - 1].clone();
        }
    }
    let rows: Vec<Vec<T>> = (1..=m)
        .map(|i| {
            (1..=m)
                .map(|j| {
                    let k = parts[j - 1] as i64 + m as i64 - j as i64 - i as i64 + 1;
                    if k < 0 {
                        T::zero()
                    } else {
                        table[i][k as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    let det = determinant(rows);
    Ok(if (m * (m - 1) / 2) % 2 == 1 { -det } else { det })
}

/// Symmetric polynomial with exact rational coefficients in the basis of
/// normalized Schur polynomials `X*_sigma = s_sigma / s_sigma(1, ..., 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricPolynomial {
    m: usize,
    coeffs: BTreeMap<Partition, Rational>,
}

impl SymmetricPolynomial {
    pub fn zero(m: usize) -> Self {
        SymmetricPolynomial {
            m,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(m: usize, c: Rational) -> Self {
        let mut p = Self::zero(m);
        p.add_coeff(Partition::empty(), c);
        p
    }

    pub fn one(m: usize) -> Self {
        Self::constant(m, Rational::one())
    }

    /// The basis element `X*_sigma`.
    pub fn basis(sigma: &Partition, m: usize) -> Result<Self> {
        Self::from_terms(m, [(sigma.clone(), Rational::one())])
    }

    /// `y_1 + ... + y_m`, which is `m X*_1`.
    pub fn sum_of_variables(m: usize) -> Self {
        let mut p = Self::zero(m);
        p.add_coeff(Partition::row(1), Rational::from_integer(BigInt::from(m)));
        p
    }

    pub fn from_terms(m: usize, terms: impl IntoIterator<Item = (Partition, Rational)>) -> Result<Self> {
        let mut p = Self::zero(m);
        for (sigma, c) in terms {
            check_length(&sigma, m)?;
            p.add_coeff(sigma, c);
        }
        Ok(p)
    }

    fn add_coeff(&mut self, sigma: Partition, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(sigma.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&sigma);
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, sigma: &Partition) -> Rational {
        self.coeffs.get(sigma).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest `|sigma|` with a nonzero coefficient.
    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(Partition::size).max().unwrap_or(0)
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::VariableCountMismatch(self.m, other.m));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (sigma, c) in &other.coeffs {
            out.add_coeff(sigma.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.m);
        for (sigma, v) in &self.coeffs {
            out.add_coeff(sigma.clone(), v * c);
        }
        out
    }

    /// Product, computed in the monomial basis and converted back.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let product = self.to_monomial()?.mul(&other.to_monomial()?);
        Self::from_monomial(&product)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        (0..k).try_fold(Self::one(self.m), |acc, _| acc.mul(self))
    }

    /// Value at `(1, ..., 1)`, which is the sum of the coefficients.
    pub fn at_ones(&self) -> Rational {
        self.coeffs.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// Expansion in monomials.
    pub fn to_monomial(&self) -> Result<MonomialPoly> {
        let mut out = MonomialPoly::zero(self.m);
        for (sigma, c) in &self.coeffs {
            let norm = Rational::from_integer(schur_at_ones(sigma, self.m)?);
            out = out.add(&schur_monomial(sigma, self.m)?.scale(&(c / norm)));
        }
        Ok(out)
    }

    /// Converts a symmetric polynomial in monomials to the `X*` basis by
    /// peeling off the lexicographically leading term.
    pub fn from_monomial(poly: &MonomialPoly) -> Result<Self> {
        let m = poly.vars();
        let mut rest = poly.clone();
        let mut out = Self::zero(m);
        while let Some((lead, c)) = rest.terms().iter().next_back().map(|(k, v)| (k.clone(), v.clone())) {
            if lead.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::OutOfRange("polynomial is not symmetric".into()));
            }
            let sigma = Partition::new(lead)?;
            rest = rest.sub(&schur_monomial(&sigma, m)?.scale(&c));
            let norm = Rational::from_integer(schur_at_ones(&sigma, m)?);
            out.add_coeff(sigma, c * norm);
        }
        Ok(out)
    }

    fn check_point<T>(&self, point: &[T]) -> Result<()> {
        if point.len() != self.m {
            return Err(Error::VariableCountMismatch(self.m, point.len()));
        }
        Ok(())
    }

    /// Evaluation through divided-difference Schur values.
    pub fn evaluate<T: Scalar>(&self, point: &[T]) -> Result<T> {
        self.check_point(point)?;
        let mut total = T::zero();
        for (sigma, c) in &self.coeffs {
            let norm = Rational::from_integer(schur_at_ones(sigma, self.m)?);
            let scaled = T::from_rational(&(c / norm));
            total = total + scaled * schur_eval(sigma, point)?;
        }
        Ok(total)
    }

    /// Evaluation through the monomial expansion.
    pub fn evaluate_expanded<T: Scalar>(&self, point: &[T]) -> Result<T> {
        self.check_point(point)?;
        Ok(self.to_monomial()?.evaluate(point))
    }

    /// `f(y_1 + 1, ..., y_m + 1)`.
    pub fn shifted_by_one(&self) -> Result<Self> {
        Self::from_monomial(&self.to_monomial()?.shifted_by_one())
    }
}

impl fmt::Display for SymmetricPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (sigma, c)) in self.coeffs.iter().enumerate() {
            let magnitude = fmt_rational(&c.abs());
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if sigma.is_empty() {
                write!(f, "{magnitude}")?;
            } else {
                write!(f, "{magnitude}*X{sigma}")?;
            }
        }
        Ok(())
    }
}

type ShiftCache = Mutex<HashMap<(Partition, usize), Arc<SymmetricPolynomial>>>;

fn shift_cache() -> &'static ShiftCache {
    static CACHE: OnceLock<ShiftCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Generalized binomial coefficient: the coefficient of `X*_sigma` in
/// `X*_kappa(y + 1)`. Zero unless `sigma` is contained in `kappa`.
pub fn gen_binomial(kappa: &Partition, sigma: &Partition, m: usize) -> Result<Rational> {
    check_length(kappa, m)?;
    check_length(sigma, m)?;
    if !sigma.is_contained_in(kappa) {
        return Ok(Rational::zero());
    }
    let key = (kappa.clone(), m);
    let cached = shift_cache().lock().expect("cache lock").get(&key).cloned();
    let shifted = match cached {
        Some(hit) => hit,
        None => {
            let value = Arc::new(SymmetricPolynomial::basis(kappa, m)?.shifted_by_one()?);
            shift_cache()
                .lock()
                .expect("cache lock")
                .insert(key, value.clone());
            value
        }
    };
    Ok(shifted.coeff(sigma))
}
