use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{principal_angles, Subspace};
use crate::sympoly::{
    dim_h, gen_binomial, hypergeom_coeff, partitions_up_to, rat, to_f64, MonomialPoly, Partition, Rational, Scalar,
    SymmetricPolynomial,
};

/// Largest degree with explicit, validated zonal forms.
pub const STABLE_DEGREE: u32 = 2;

pub(crate) fn check_grassmannian(m: usize, n: usize) -> Result<()> {
    if m == 0 || 2 * m > n {
        return Err(Error::OutOfRange(format!("need 1 <= m and 2m <= n, got m = {m}, n = {n}")));
    }
    Ok(())
}

fn int(v: usize) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// A zonal orthogonal polynomial `Z_mu` for `G(m, n)`, stored exactly in the
/// `X*` basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZonalPolynomial {
    mu: Partition,
    m: usize,
    n: usize,
    poly: SymmetricPolynomial,
    normalized: bool,
}

impl ZonalPolynomial {
    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &SymmetricPolynomial {
        &self.poly
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn at_ones(&self) -> Rational {
        self.poly.at_ones()
    }

    pub fn evaluate<T: Scalar>(&self, y: &[T]) -> Result<T> {
        self.poly.evaluate(y)
    }

    /// `Z_mu` at the principal angles between `a` and `b`.
    pub fn evaluate_pair(&self, a: &Subspace, b: &Subspace) -> Result<f64> {
        let y = principal_angles(a, b)?;
        if y.len() != self.m {
            return Err(Error::DimensionMismatch(format!(
                "subspaces have dimension {}, polynomial has {} variables",
                y.len(),
                self.m
            )));
        }
        self.poly.evaluate(y.values())
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        ZonalPolynomial {
            poly: self.poly.scale(c),
            normalized: false,
            ..self.clone()
        }
    }
}

/// The explicit forms of `Z_0`, `Z_1`, `Z_{1,1}` and `Z_2`.
pub fn zonal_explicit(mu: &Partition, m: usize, n: usize) -> Result<ZonalPolynomial> {
    check_grassmannian(m, n)?;
    if mu.size() > STABLE_DEGREE {
        return Err(Error::UnsupportedPartition(format!("{mu}: explicit forms cover |mu| <= 2")));
    }
    if mu.len() > m {
        return Err(Error::LengthExceedsVariables {
            partition: mu.to_string(),
            vars: m,
        });
    }
    let (mm, nn) = (int(m), int(n));
    let one = Rational::one();
    let x1 = Partition::row(1);
    let terms: Vec<(Partition, Rational)> = match mu.parts() {
        [] => vec![(Partition::empty(), one)],
        [1] => vec![(Partition::empty(), -mm), (x1, nn)],
        [1, 1] => vec![
            (Partition::empty(), &mm * (&mm - &one)),
            (x1, rat(-2) * (&nn - &one) * (&mm - &one)),
            (Partition::column(2), (&nn - &one) * (&nn - rat(2))),
        ],
        [2] => vec![
            (Partition::empty(), &mm * (&mm + &one)),
            (x1, rat(-2) * (&nn + &one) * (&mm + &one)),
            (Partition::row(2), (&nn + &one) * (&nn + rat(2))),
        ],
        _ => unreachable!("partitions of size <= 2"),
    };
    Ok(ZonalPolynomial {
        mu: mu.clone(),
        m,
        n,
        poly: SymmetricPolynomial::from_terms(m, terms)?,
        normalized: mu.is_empty(),
    })
}

fn rho(sigma: &Partition) -> Rational {
    let total: i64 = sigma
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &s)| s as i64 * (s as i64 - 2 * (i as i64 + 1) + 1))
        .sum();
    rat(total)
}

/// Outcome of checking the general formula against the explicit forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZonalValidation {
    /// `[c]_{(kappa, kappa)} = 1` was used to start the recursion.
    pub base_case_assumed: bool,
    /// Whether an explicit form existed to compare against.
    pub checked: bool,
    /// `general = ratio * explicit` when checked.
    pub ratio: Option<Rational>,
}

#[derive(Clone, Debug)]
pub struct GeneralZonal {
    pub zonal: ZonalPolynomial,
    pub validation: ZonalValidation,
}

/// The general hypergeometric formula for `Z_kappa` with free parameters
/// `a` and `c`. For `|kappa| <= 2` the result must be an exact multiple of
/// [`zonal_explicit`].
pub fn zonal_general(kappa: &Partition, m: usize, n: usize, a: &Rational, c: &Rational) -> Result<GeneralZonal> {
    check_grassmannian(m, n)?;
    if kappa.len() > m {
        return Err(Error::LengthExceedsVariables {
            partition: kappa.to_string(),
            vars: m,
        });
    }
    let k = kappa.size();
    let rho_k = rho(kappa);
    let below: Vec<Partition> = partitions_up_to(k, m)
        .into_iter()
        .filter(|s| s.is_contained_in(kappa))
        .collect();
    let degenerate = |what: &str| Error::UnsupportedPartition(format!("{kappa}: {what} vanishes for a = {a}, c = {c}"));

    let mut cc: HashMap<Partition, Rational> = HashMap::new();
    cc.insert(kappa.clone(), Rational::one());
    for sigma in below.iter().rev().filter(|s| *s != kappa) {
        let diff = int((k - sigma.size()) as usize);
        let b_ks = gen_binomial(kappa, sigma, m)?;
        let shift = c + (&rho_k - rho(sigma)) / &diff;
        if b_ks.is_zero() {
            return Err(degenerate("binomial coefficient"));
        }
        if shift.is_zero() {
            return Err(degenerate("recursion denominator"));
        }
        let mut total = Rational::zero();
        for i in 0..m {
            let Some(up) = sigma.add_box(i) else { continue };
            if !up.is_contained_in(kappa) {
                continue;
            }
            let num = gen_binomial(kappa, &up, m)? * gen_binomial(&up, sigma, m)?;
            total += num * &cc[&up];
        }
        cc.insert(sigma.clone(), total / (&diff * b_ks * shift));
    }

    let mut terms = Vec::with_capacity(below.len());
    for sigma in &below {
        let denom = hypergeom_coeff(a, sigma);
        if denom.is_zero() {
            return Err(degenerate("hypergeometric coefficient"));
        }
        let sign = if sigma.size() % 2 == 0 { rat(1) } else { rat(-1) };
        terms.push((sigma.clone(), sign * gen_binomial(kappa, sigma, m)? * &cc[sigma] / denom));
    }
    let zonal = ZonalPolynomial {
        mu: kappa.clone(),
        m,
        n,
        poly: SymmetricPolynomial::from_terms(m, terms)?,
        normalized: false,
    };

    let mut validation = ZonalValidation {
        base_case_assumed: true,
        checked: false,
        ratio: None,
    };
    if k <= STABLE_DEGREE {
        let explicit = zonal_explicit(kappa, m, n)?;
        let ratio = zonal.poly.coeff(kappa) / explicit.poly.coeff(kappa);
        if explicit.poly.scale(&ratio) != zonal.poly {
            return Err(Error::ValidationFailure {
                partition: kappa.to_string(),
                general: zonal.poly.to_string(),
                explicit: explicit.poly.to_string(),
            });
        }
        validation.checked = true;
        validation.ratio = Some(ratio);
    }
    Ok(GeneralZonal { zonal, validation })
}

/// Rescales so that the value at `(1, ..., 1)` is `dim H_mu`.
pub fn normalize_zonal(z: &ZonalPolynomial) -> Result<ZonalPolynomial> {
    let at_ones = z.at_ones();
    if at_ones.is_zero() {
        return Err(Error::DegenerateAtOnes);
    }
    let dim = Rational::from_integer(dim_h(&z.mu, z.n)?);
    Ok(ZonalPolynomial {
        poly: z.poly.scale(&(dim / at_ones)),
        normalized: true,
        ..z.clone()
    })
}

/// Coefficients `c_mu` of a symmetric polynomial in a zonal basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZonalExpansion {
    pub m: usize,
    pub n: usize,
    pub coeffs: BTreeMap<Partition, Rational>,
}

impl ZonalExpansion {
    pub fn coeff(&self, mu: &Partition) -> Rational {
        self.coeffs.get(mu).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant coefficient `c_0`.
    pub fn c0(&self) -> Rational {
        self.coeff(&Partition::empty())
    }
}

/// The zonal polynomials `Z_mu`, `|mu| <= degree`, for one Grassmannian.
///
/// Degrees up to 2 use the explicit forms. Higher degrees come from the
/// general formula with `a = m`, `c = n` and must be requested explicitly.
#[derive(Clone, Debug)]
pub struct ZonalBasis {
    m: usize,
    n: usize,
    degree: u32,
    zonals: Vec<ZonalPolynomial>,
}

impl ZonalBasis {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        Self::with_degree(m, n, STABLE_DEGREE, false)
    }

    pub fn with_degree(m: usize, n: usize, degree: u32, experimental: bool) -> Result<Self> {
        check_grassmannian(m, n)?;
        if degree > STABLE_DEGREE && !experimental {
            return Err(Error::DegreeTooHigh {
                degree: degree as usize,
                available: STABLE_DEGREE as usize,
            });
        }
        let (a, c) = (int(m), int(n));
        let zonals = partitions_up_to(degree, m)
            .iter()
            .map(|mu| {
                if mu.size() <= STABLE_DEGREE {
                    zonal_explicit(mu, m, n)
                } else {
                    Ok(zonal_general(mu, m, n, &a, &c)?.zonal)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ZonalBasis { m, n, degree, zonals })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn zonals(&self) -> &[ZonalPolynomial] {
        &self.zonals
    }

    pub fn get(&self, mu: &Partition) -> Result<&ZonalPolynomial> {
        self.zonals.iter().find(|z| &z.mu == mu).ok_or_else(|| {
            if mu.len() > self.m {
                Error::LengthExceedsVariables {
                    partition: mu.to_string(),
                    vars: self.m,
                }
            } else {
                Error::DegreeTooHigh {
                    degree: mu.size() as usize,
                    available: self.degree as usize,
                }
            }
        })
    }

    pub fn normalized(&self, mu: &Partition) -> Result<ZonalPolynomial> {
        normalize_zonal(self.get(mu)?)
    }

    /// Exact coefficients of `f` in this basis, by triangular solve from the
    /// largest partition down.
    pub fn expand(&self, f: &SymmetricPolynomial) -> Result<ZonalExpansion> {
        if f.m() != self.m {
            return Err(Error::VariableCountMismatch(self.m, f.m()));
        }
        if f.degree() > self.degree {
            return Err(Error::DegreeTooHigh {
                degree: f.degree() as usize,
                available: self.degree as usize,
            });
        }
        let mut rest = f.clone();
        let mut coeffs = BTreeMap::new();
        for z in self.zonals.iter().rev() {
            let target = rest.coeff(&z.mu);
            if target.is_zero() {
                continue;
            }
            let c = target / z.poly.coeff(&z.mu);
            rest = rest.sub(&z.poly.scale(&c))?;
            coeffs.insert(z.mu.clone(), c);
        }
        debug_assert!(rest.is_zero());
        Ok(ZonalExpansion {
            m: self.m,
            n: self.n,
            coeffs,
        })
    }

    /// `sum c_mu Z_mu`.
    pub fn reconstruct(&self, expansion: &ZonalExpansion) -> Result<SymmetricPolynomial> {
        expansion
            .coeffs
            .iter()
            .try_fold(SymmetricPolynomial::zero(self.m), |acc, (mu, c)| acc.add(&self.get(mu)?.poly.scale(c)))
    }

    /// The aggregate `Z_t`: the sum of the normalized `Z_mu` with
    /// `|mu| <= t`.
    pub fn aggregate(&self, t: u32) -> Result<SymmetricPolynomial> {
        if t > self.degree {
            return Err(Error::DegreeTooHigh {
                degree: t as usize,
                available: self.degree as usize,
            });
        }
        self.zonals
            .iter()
            .filter(|z| z.mu.size() <= t)
            .try_fold(SymmetricPolynomial::zero(self.m), |acc, z| acc.add(&normalize_zonal(z)?.poly))
    }
}

/// Expansion of `f` in the stable (degree 2) zonal basis of `G(m, n)`.
pub fn expand_in_zonal(f: &SymmetricPolynomial, m: usize, n: usize) -> Result<ZonalExpansion> {
    ZonalBasis::new(m, n)?.expand(f)
}

/// `prod_{alpha in A} (y_1 + ... + y_m - alpha)`.
pub fn annihilator_sympoly(values: &[Rational], m: usize) -> Result<SymmetricPolynomial> {
    let sum = SymmetricPolynomial::sum_of_variables(m);
    values.iter().try_fold(SymmetricPolynomial::one(m), |acc, alpha| {
        acc.mul(&sum.sub(&SymmetricPolynomial::constant(m, alpha.clone()))?)
    })
}

/// A symmetric polynomial lowered to floating-point monomials for fast
/// repeated evaluation.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    terms: Vec<(Vec<u32>, f64)>,
}

impl CompiledPoly {
    pub fn new(poly: &SymmetricPolynomial) -> Result<Self> {
        let mono: MonomialPoly = poly.to_monomial()?;
        Ok(CompiledPoly {
            terms: mono.terms().iter().map(|(e, c)| (e.clone(), to_f64(c))).collect(),
        })
    }

    pub fn evaluate(&self, y: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(exps, c)| exps.iter().zip(y).fold(*c, |acc, (&e, &v)| acc * v.powi(e as i32)))
            .sum()
    }
}
