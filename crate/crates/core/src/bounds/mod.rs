//! Absolute and relative bounds on codes and designs in `G(m, n)`.

mod table;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{principal_angles, Code};
use crate::sympoly::{binomial, dim_hk, fmt_rational, rat, Partition, Rational, SymmetricPolynomial};
use crate::zonal::{expand_in_zonal, ZonalBasis, ZonalExpansion, STABLE_DEGREE};

pub use table::{bound_table, BoundTable, TableCell};

/// Off-diagonal values of `f` above this count as positive.
pub const NONPOSITIVE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    AbsoluteCode,
    RelativeCode,
    OneDistance,
    TwoDistance,
    AbsoluteDesign,
    RelativeDesign,
    CodeDesignExact,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::AbsoluteCode => "absolute code bound",
            BoundKind::RelativeCode => "relative code bound",
            BoundKind::OneDistance => "one-distance bound",
            BoundKind::TwoDistance => "two-distance bound",
            BoundKind::AbsoluteDesign => "absolute design bound",
            BoundKind::RelativeDesign => "relative design bound",
            BoundKind::CodeDesignExact => "forced code-design size",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strictness {
    Strict,
    NonStrict,
    /// A hypothesis the caller vouches for; not checked here.
    Asserted,
}

/// One hypothesis of a bound. For inequalities the margin is
/// `right side - left side`, so it is nonnegative when the inequality holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub text: String,
    pub strictness: Strictness,
    pub margin: Option<Rational>,
    pub holds: bool,
}

impl Condition {
    fn inequality(text: impl Into<String>, margin: Rational, strictness: Strictness) -> Self {
        let holds = match strictness {
            Strictness::Strict => margin.is_positive(),
            _ => !margin.is_negative(),
        };
        Condition {
            text: text.into(),
            strictness,
            margin: Some(margin),
            holds,
        }
    }

    fn asserted(text: impl Into<String>) -> Self {
        Condition {
            text: text.into(),
            strictness: Strictness::Asserted,
            margin: None,
            holds: true,
        }
    }

    fn checked(text: impl Into<String>, holds: bool) -> Self {
        Condition {
            text: text.into(),
            strictness: Strictness::NonStrict,
            margin: None,
            holds,
        }
    }

    /// Whether the inequality holds with equality.
    pub fn is_boundary(&self) -> bool {
        self.margin.as_ref().is_some_and(Zero::is_zero)
    }

    fn status(&self) -> &'static str {
        match (self.strictness, self.holds, self.is_boundary()) {
            (Strictness::Asserted, _, _) => "assumed",
            (_, true, true) => "boundary",
            (_, true, false) => "holds",
            (_, false, true) => "fails (boundary)",
            (_, false, false) => "fails",
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "condition": self.text,
            "status": self.status(),
            "holds": self.holds,
            "margin": self.margin.as_ref().map(fmt_rational),
        })
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.status(), self.text)?;
        if let Some(margin) = &self.margin {
            write!(f, " (margin {})", fmt_rational(margin))?;
        }
        Ok(())
    }
}

/// A bound together with the hypotheses it rests on.
///
/// The value is reported even when a hypothesis fails; it is `None` only when
/// the defining expression has a vanishing denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundResult {
    pub kind: BoundKind,
    pub value: Option<Rational>,
    pub conditions: Vec<Condition>,
    pub applicable: bool,
    /// Lower bounds (designs) as opposed to upper bounds (codes).
    pub lower: bool,
}

impl BoundResult {
    fn new(kind: BoundKind, value: Option<Rational>, conditions: Vec<Condition>, lower: bool) -> Self {
        let applicable = value.is_some() && conditions.iter().all(|c| c.holds);
        BoundResult {
            kind,
            value,
            conditions,
            applicable,
            lower,
        }
    }

    pub fn value_f64(&self) -> Option<f64> {
        self.value.as_ref().map(crate::sympoly::to_f64)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.name(),
            "direction": if self.lower { "lower" } else { "upper" },
            "value": self.value.as_ref().map(fmt_rational),
            "value_float": self.value_f64(),
            "applicable": self.applicable,
            "conditions": self.conditions.iter().map(Condition::to_json).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for BoundResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.lower { ">=" } else { "<=" };
        match &self.value {
            Some(v) => write!(f, "{}: |S| {rel} {}", self.kind.name(), fmt_rational(v))?,
            None => write!(f, "{}: undefined (vanishing denominator)", self.kind.name())?,
        }
        writeln!(f, " ({})", if self.applicable { "applicable" } else { "not applicable" })?;
        for c in &self.conditions {
            writeln!(f, "  {c}")?;
        }
        Ok(())
    }
}

fn int(v: usize) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn check_grassmannian(m: usize, n: usize) -> Result<()> {
    if m == 0 || 2 * m > n {
        return Err(Error::OutOfRange(format!("need 1 <= m and 2m <= n, got m = {m}, n = {n}")));
    }
    Ok(())
}

/// Absolute bounds for an `A`-code with `|A| = k`: the dimension of the
/// homogeneous polynomials of degree `k` in the projector entries and
/// `dim H_k(m, n)`.
pub fn absolute_code_bound(k: u32, m: usize, n: usize) -> Result<(BigInt, BigInt)> {
    check_grassmannian(m, n)?;
    let n2 = (n * n) as u64;
    let hom = match k {
        0 => BigInt::one(),
        1 => BigInt::from(n2),
        2 if m > 1 => binomial(n2, 2),
        _ => binomial(n2 + k as u64 - 1, k as u64),
    };
    Ok((hom, dim_hk(k, m, n)?))
}

fn expansion_for(f: &SymmetricPolynomial, m: usize, n: usize) -> Result<(ZonalBasis, ZonalExpansion)> {
    let degree = f.degree().max(STABLE_DEGREE);
    let basis = ZonalBasis::with_degree(m, n, degree, false)?;
    let expansion = basis.expand(f)?;
    Ok((basis, expansion))
}

fn ratio_at_ones(f: &SymmetricPolynomial, c0: &Rational) -> Option<Rational> {
    (!c0.is_zero()).then(|| f.at_ones() / c0)
}

fn relative_code_conditions(basis: &ZonalBasis, e: &ZonalExpansion) -> Vec<Condition> {
    let mut conditions: Vec<Condition> = basis
        .zonals()
        .iter()
        .map(|z| z.mu())
        .filter(|mu| !mu.is_empty())
        .map(|mu| Condition::inequality(format!("c{mu} >= 0"), e.coeff(mu), Strictness::NonStrict))
        .collect();
    conditions.push(Condition::inequality("c0 > 0", e.c0(), Strictness::Strict));
    conditions
}

/// `|S| <= f(1, ..., 1) / c_0` for codes on whose off-diagonal pairs `f` is
/// nonpositive. That hypothesis is recorded as assumed.
pub fn relative_code_bound(f: &SymmetricPolynomial, m: usize, n: usize) -> Result<BoundResult> {
    let (basis, e) = expansion_for(f, m, n)?;
    let mut conditions = relative_code_conditions(&basis, &e);
    conditions.push(Condition::asserted("f(a, b) <= 0 for all a != b in S"));
    Ok(BoundResult::new(BoundKind::RelativeCode, ratio_at_ones(f, &e.c0()), conditions, false))
}

/// As [`relative_code_bound`], with the nonpositivity hypothesis checked on
/// every pair of `code` (tolerance [`NONPOSITIVE_TOL`]).
pub fn relative_code_bound_for(f: &SymmetricPolynomial, code: &Code) -> Result<BoundResult> {
    let (m, n) = (code.m(), code.n());
    let (basis, e) = expansion_for(f, m, n)?;
    let mut worst = f64::NEG_INFINITY;
    for i in 0..code.len() {
        for j in (i + 1)..code.len() {
            let y = principal_angles(code.member(i), code.member(j))?;
            worst = worst.max(f.evaluate(y.values())?);
        }
    }
    let mut conditions = relative_code_conditions(&basis, &e);
    conditions.push(Condition::checked(
        format!("f(a, b) <= 0 for all a != b in S (max {worst:.3e})"),
        worst <= NONPOSITIVE_TOL,
    ));
    Ok(BoundResult::new(BoundKind::RelativeCode, ratio_at_ones(f, &e.c0()), conditions, false))
}

/// `n(m - alpha) / (m^2 - n alpha)`, valid for `alpha < m^2 / n`.
pub fn one_distance_bound(alpha: &Rational, m: usize, n: usize) -> BoundResult {
    let (mm, nn) = (int(m), int(n));
    let den = &mm * &mm - &nn * alpha;
    let value = (!den.is_zero()).then(|| &nn * (&mm - alpha) / &den);
    let threshold = &mm * &mm / &nn;
    let conditions = vec![Condition::inequality(
        format!("alpha < m^2/n = {}", fmt_rational(&threshold)),
        threshold - alpha,
        Strictness::Strict,
    )];
    BoundResult::new(BoundKind::OneDistance, value, conditions, false)
}

/// Closed-form relative bound for `{alpha, beta}`-codes.
///
/// When `n = 2` the first condition's closed form is `0/0`; it is replaced
/// by the equivalent requirement that the `Z_1` coefficient of the
/// annihilator be nonnegative.
pub fn two_distance_bound(alpha: &Rational, beta: &Rational, m: usize, n: usize) -> Result<BoundResult> {
    check_grassmannian(m, n)?;
    let (mm, nn) = (int(m), int(n));
    let one = Rational::one();
    let m2 = &mm * &mm;
    let bracket = (&mm + &one) * (&mm + &one) / (rat(2) * (&nn + &one)) + (&mm - &one) * (&mm - &one) / (rat(2) * (&nn - &one))
        - (alpha + beta)
        + &nn * alpha * beta / &m2;
    if bracket.is_zero() {
        return Err(Error::DegenerateDenominator);
    }
    let value = &nn * (&mm - alpha) * (&mm - beta) / (&m2 * bracket);
    let sum = alpha + beta;
    let n2 = &nn * &nn;
    let first = if n2 == rat(4) {
        let f = crate::zonal::annihilator_sympoly(&[alpha.clone(), beta.clone()], m)?;
        let c1 = expand_in_zonal(&f, m, n)?.coeff(&Partition::row(1));
        Condition::inequality("c(1) >= 0 (closed form is 0/0 at n = 2)", c1, Strictness::NonStrict)
    } else {
        let rhs = rat(2) * (&m2 * &nn - rat(4) * &mm + &nn) / (&n2 - rat(4));
        Condition::inequality(
            format!("alpha + beta <= 2(m^2n - 4m + n)/(n^2 - 4) = {}", fmt_rational(&rhs)),
            rhs - &sum,
            Strictness::NonStrict,
        )
    };
    let rhs2 = (&m2 * &nn - rat(2) * &mm + &nn) / (&n2 - &one);
    let lhs2 = &sum - &nn * alpha * beta / &m2;
    let second = Condition::inequality(
        format!("alpha + beta - n alpha beta/m^2 < (m^2n - 2m + n)/(n^2 - 1) = {}", fmt_rational(&rhs2)),
        rhs2 - lhs2,
        Strictness::Strict,
    );
    Ok(BoundResult::new(BoundKind::TwoDistance, Some(value), vec![first, second], false))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Simplex,
    Orthoplex,
}

/// Simplex and orthoplex thresholds for `N` points of `G(m, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexOrthoplex {
    /// Lower bound on the largest inner product: `m(mN - n)/(nN - n)`.
    pub simplex_alpha: Rational,
    /// Lower bound on the largest inner product once `N > n^2`: `m^2/n`.
    pub orthoplex_beta: Rational,
    /// Largest size meeting the orthoplex bound with equality, `2(n^2 - 1)`.
    pub orthoplex_max_size: BigInt,
    pub regime: Regime,
}

pub fn simplex_orthoplex(size: u64, m: usize, n: usize) -> Result<SimplexOrthoplex> {
    if size < 2 {
        return Err(Error::OutOfRange(format!("need at least 2 points, got {size}")));
    }
    check_grassmannian(m, n)?;
    let (mm, nn, big_n) = (int(m), int(n), Rational::from_integer(BigInt::from(size)));
    let simplex_alpha = &mm * (&mm * &big_n - &nn) / (&nn * &big_n - &nn);
    let n2 = (n * n) as u64;
    Ok(SimplexOrthoplex {
        simplex_alpha,
        orthoplex_beta: &mm * &mm / &nn,
        orthoplex_max_size: BigInt::from(2 * (n2 - 1)),
        regime: if size <= n2 { Regime::Simplex } else { Regime::Orthoplex },
    })
}

/// The size `N` at which the simplex threshold equals `alpha`:
/// `n(m - alpha)/(m^2 - n alpha)`.
pub fn simplex_size_for(alpha: &Rational, m: usize, n: usize) -> Option<Rational> {
    let (mm, nn) = (int(m), int(n));
    let den = &mm * &mm - &nn * alpha;
    (!den.is_zero()).then(|| &nn * (&mm - alpha) / den)
}

/// A `t`-design has at least `dim H_{floor(t/2)}(m, n)` members.
pub fn design_absolute_bound(t: u32, m: usize, n: usize) -> Result<BigInt> {
    dim_hk(t / 2, m, n)
}

/// `|S| >= f(1, ..., 1)/c_0` for `t`-designs on which `f >= 0`, provided
/// `c_mu <= 0` for `|mu| > t` and `c_0 > 0`.
pub fn relative_design_bound(f: &SymmetricPolynomial, t: u32, m: usize, n: usize) -> Result<BoundResult> {
    let (basis, e) = expansion_for(f, m, n)?;
    let mut conditions: Vec<Condition> = basis
        .zonals()
        .iter()
        .map(|z| z.mu())
        .filter(|mu| mu.size() > t)
        .map(|mu| Condition::inequality(format!("c{mu} <= 0"), -e.coeff(mu), Strictness::NonStrict))
        .collect();
    conditions.push(Condition::inequality("c0 > 0", e.c0(), Strictness::Strict));
    conditions.push(Condition::asserted("f(a, b) >= 0 for all a, b in S"));
    Ok(BoundResult::new(BoundKind::RelativeDesign, ratio_at_ones(f, &e.c0()), conditions, true))
}

/// The size forced on a code that is nonpositive under `f` and is a
/// `t`-design with `t >= deg f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSize {
    pub value: Rational,
    pub integral: bool,
}

pub fn code_design_exact_size(f: &SymmetricPolynomial, t: u32, m: usize, n: usize) -> Result<ExactSize> {
    if t < f.degree() {
        return Err(Error::OutOfRange(format!("design strength {t} is below deg f = {}", f.degree())));
    }
    let (basis, e) = expansion_for(f, m, n)?;
    let conditions = relative_code_conditions(&basis, &e);
    if let Some(bad) = conditions.iter().find(|c| !c.holds) {
        return Err(Error::OutOfRange(format!("coefficient condition fails: {bad}")));
    }
    let value = f.at_ones() / e.c0();
    Ok(ExactSize {
        integral: value.is_integer(),
        value,
    })
}
