use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use super::design::design_strength;
use super::relations::inner_product_set;
use crate::error::Result;
use crate::linalg::Code;
use crate::sympoly::{dim_hk, Partition, Rational, SymmetricPolynomial};
use crate::zonal::STABLE_DEGREE;

/// The three predicates of the distance/design/size trichotomy at level `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoThreeReport {
    pub t: u32,
    pub inner_products: Vec<f64>,
    /// `|A| = t`.
    pub is_t_distance: bool,
    /// Whether the code is a `2t`-design; `None` when `2t` exceeds the
    /// testable degree and the code passes every testable level.
    pub is_2t_design: Option<bool>,
    pub design_strength: u32,
    pub size: usize,
    pub dim_ht: BigInt,
    /// `|S| = dim H_t(m, n)`.
    pub size_matches: bool,
    /// `false` when exactly two predicates hold and the third fails.
    pub consistent: bool,
    pub warning: Option<String>,
}

impl TwoThreeReport {
    pub fn to_json(&self) -> Value {
        json!({
            "t": self.t,
            "inner_products": self.inner_products,
            "is_t_distance": self.is_t_distance,
            "is_2t_design": self.is_2t_design,
            "design_strength": self.design_strength,
            "size": self.size,
            "dim_H_t": self.dim_ht.to_string(),
            "size_matches": self.size_matches,
            "consistent": self.consistent,
            "warning": self.warning,
        })
    }
}

impl fmt::Display for TwoThreeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let design = match self.is_2t_design {
            Some(b) => b.to_string(),
            None => "untestable".into(),
        };
        writeln!(f, "{}-distance set: {} ({} values)", self.t, self.is_t_distance, self.inner_products.len())?;
        writeln!(f, "{}-design: {design} (strength at least {})", 2 * self.t, self.design_strength)?;
        writeln!(f, "|S| = dim H_{}: {} ({} vs {})", self.t, self.size_matches, self.size, self.dim_ht)?;
        match &self.warning {
            Some(w) => writeln!(f, "WARNING: {w}"),
            None => writeln!(f, "consistent: {}", self.consistent),
        }
    }
}

/// Evaluates the three predicates and checks that no two of them hold
/// without the third.
pub fn twothree_audit(code: &Code, t: u32, tol: f64) -> Result<TwoThreeReport> {
    let inner_products = if code.len() >= 2 { inner_product_set(code, tol)? } else { Vec::new() };
    let is_t_distance = inner_products.len() == t as usize;
    let testable = (2 * t).min(STABLE_DEGREE);
    let strength = design_strength(code, testable, tol)?.strength;
    let is_2t_design = if strength >= 2 * t {
        Some(true)
    } else if strength < testable {
        Some(false)
    } else {
        None
    };
    let dim_ht = dim_hk(t, code.m(), code.n())?;
    let size_matches = dim_ht.to_usize() == Some(code.len());
    let known: Vec<bool> = [Some(is_t_distance), is_2t_design, Some(size_matches)].into_iter().flatten().collect();
    let holding = known.iter().filter(|&&b| b).count();
    let (consistent, warning) = if known.len() == 3 && holding == 2 {
        (false, Some("two predicates hold but the third fails; numerical health is in question".to_string()))
    } else if known.len() == 2 && holding == 2 {
        (true, Some(format!("the other two predicates force a {}-design, which exceeds the testable degree", 2 * t)))
    } else {
        (true, None)
    };
    Ok(TwoThreeReport {
        t,
        inner_products,
        is_t_distance,
        is_2t_design,
        design_strength: strength,
        size: code.len(),
        dim_ht,
        size_matches,
        consistent,
        warning,
    })
}

/// Writes `f` as `g(y_1 + ... + y_m)` and returns the coefficients of `g`
/// from the constant term up, or `None` if `f` is not a function of the
/// trace alone.
pub fn as_trace_polynomial(f: &SymmetricPolynomial) -> Result<Option<Vec<Rational>>> {
    let m = f.m();
    let sum = SymmetricPolynomial::sum_of_variables(m);
    let degree = f.degree();
    let mut powers = vec![SymmetricPolynomial::one(m)];
    for _ in 0..degree {
        let next = powers.last().expect("nonempty").mul(&sum)?;
        powers.push(next);
    }
    let mut rest = f.clone();
    let mut coeffs = vec![Rational::zero(); degree as usize + 1];
    for d in (0..=degree).rev() {
        let row = Partition::row(d);
        let c = rest.coeff(&row) / powers[d as usize].coeff(&row);
        rest = rest.sub(&powers[d as usize].scale(&c))?;
        coeffs[d as usize] = c;
    }
    Ok(rest.is_zero().then_some(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::mub_code;
    use crate::sympoly::rat;
    use crate::zonal::{zonal_explicit, annihilator_sympoly};

    #[test]
    fn mub_audit_is_silent() {
        let report = twothree_audit(&mub_code(5).unwrap(), 2, 1e-8).unwrap();
        assert!(report.is_t_distance);
        assert!(!report.size_matches);
        assert!(report.consistent);
        assert!(report.warning.is_none());
    }

    #[test]
    fn trace_polynomials() {
        let f = annihilator_sympoly(&[rat(0), rat(1)], 2).unwrap();
        assert_eq!(as_trace_polynomial(&f).unwrap(), Some(vec![rat(0), rat(-1), rat(1)]));
        let z1 = zonal_explicit(&Partition::row(1), 2, 5).unwrap();
        assert!(as_trace_polynomial(z1.poly()).unwrap().is_some());
        let z2 = zonal_explicit(&Partition::row(2), 2, 5).unwrap();
        assert!(as_trace_polynomial(z2.poly()).unwrap().is_none());
        let m1 = zonal_explicit(&Partition::row(2), 1, 5).unwrap();
        assert!(as_trace_polynomial(m1.poly()).unwrap().is_some());
    }
}
