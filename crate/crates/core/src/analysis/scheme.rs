use std::fmt;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::design::design_strength_with;
use super::relations::{pair_angles, RelationPartition};
use crate::error::{Error, Result};
use crate::linalg::Code;
use crate::sympoly::Partition;
use crate::zonal::{normalize_zonal, CompiledPoly, ZonalBasis, STABLE_DEGREE};

/// Bose-Mesner closure test of a relation partition.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemeReport {
    pub is_scheme: bool,
    pub classes: usize,
    /// Largest relative Frobenius distance from `A_i A_j` to the span of
    /// the relation matrices.
    pub closure_residual: f64,
    /// `p^k_{ij}` indexed `[i][j][k]`, present when `is_scheme`.
    pub intersection_numbers: Option<Vec<Vec<Vec<i64>>>>,
    /// Largest distance of a projection coefficient from an integer.
    pub rounding_error: f64,
    pub tol: f64,
}

impl SchemeReport {
    pub fn to_json(&self) -> Value {
        json!({
            "is_scheme": self.is_scheme,
            "classes": self.classes,
            "closure_residual": self.closure_residual,
            "rounding_error": self.rounding_error,
            "intersection_numbers": self.intersection_numbers,
            "tolerance": self.tol,
        })
    }
}

impl fmt::Display for SchemeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "association scheme: {} ({} relations including the identity)",
            self.is_scheme, self.classes
        )?;
        writeln!(f, "closure residual: {:.3e} (tolerance {:.1e})", self.closure_residual, self.tol)?;
        writeln!(f, "intersection number rounding error: {:.3e}", self.rounding_error)?;
        if let Some(p) = &self.intersection_numbers {
            for (i, row) in p.iter().enumerate() {
                for (j, ks) in row.iter().enumerate() {
                    let ks: Vec<String> = ks.iter().map(i64::to_string).collect();
                    writeln!(f, "  p[{i}][{j}] = ({})", ks.join(", "))?;
                }
            }
        }
        Ok(())
    }
}

/// Projects every product `A_i A_j` onto the span of the relation matrices.
/// The supports are disjoint, so each coefficient is the mean of the product
/// over the corresponding support.
pub fn check_scheme(r: &RelationPartition, tol: f64) -> Result<SchemeReport> {
    let c = r.class_count();
    if c < 2 {
        return Err(Error::OutOfRange("a scheme needs at least two relations".into()));
    }
    let mats: Vec<DMatrix<f64>> = (0..c).map(|k| r.relation_matrix(k)).collect();
    let counts: Vec<f64> = r.classes.iter().map(|cl| cl.pairs as f64).collect();
    let pairs: Vec<(usize, usize)> = (0..c).flat_map(|i| (0..c).map(move |j| (i, j))).collect();
    let results: Vec<(f64, f64, Vec<f64>)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let product = &mats[i] * &mats[j];
            let mut sums = vec![0.0; c];
            for a in 0..r.size {
                for b in 0..r.size {
                    sums[r.class_of(a, b)] += product[(a, b)];
                }
            }
            let coeffs: Vec<f64> = sums.iter().zip(&counts).map(|(s, n)| if *n > 0.0 { s / n } else { 0.0 }).collect();
            let mut resid = 0.0;
            for a in 0..r.size {
                for b in 0..r.size {
                    let d = product[(a, b)] - coeffs[r.class_of(a, b)];
                    resid += d * d;
                }
            }
            let norm = product.norm();
            let relative = if norm > 0.0 { resid.sqrt() / norm } else { 0.0 };
            let rounding = coeffs.iter().map(|x| (x - x.round()).abs()).fold(0.0, f64::max);
            (relative, rounding, coeffs)
        })
        .collect();
    let closure_residual = results.iter().map(|r| r.0).fold(0.0, f64::max);
    let rounding_error = results.iter().map(|r| r.1).fold(0.0, f64::max);
    let is_scheme = closure_residual < tol;
    let intersection_numbers = is_scheme.then(|| {
        (0..c)
            .map(|i| {
                (0..c)
                    .map(|j| results[i * c + j].2.iter().map(|x| x.round() as i64).collect())
                    .collect()
            })
            .collect()
    });
    Ok(SchemeReport {
        is_scheme,
        classes: c,
        closure_residual,
        intersection_numbers,
        rounding_error,
        tol,
    })
}

/// Orthogonality residual of one pair of zonal idempotents.
#[derive(Clone, Debug, PartialEq)]
pub struct IdempotentPair {
    pub mu: Partition,
    pub lambda: Partition,
    /// `|| E_mu E_lambda - delta E_mu ||_F`.
    pub residual: f64,
    /// Whether the code is a `(|mu| + |lambda|)`-design, which forces the
    /// residual to vanish; `None` when that strength cannot be tested.
    pub guaranteed: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdempotentReport {
    pub pairs: Vec<IdempotentPair>,
    pub max_residual: f64,
    /// Largest relative distance of `A'_alpha E'_i` from a multiple of `E'_i`.
    pub eigen_residual: f64,
    /// The multipliers, indexed `[alpha][i]`.
    pub eigenvalues: Vec<Vec<f64>>,
    pub design_strength: u32,
}

impl IdempotentReport {
    pub fn to_json(&self) -> Value {
        json!({
            "max_residual": self.max_residual,
            "eigen_residual": self.eigen_residual,
            "eigenvalues": self.eigenvalues,
            "design_strength": self.design_strength,
            "pairs": self.pairs.iter().map(|p| json!({
                "mu": p.mu.to_string(),
                "lambda": p.lambda.to_string(),
                "residual": p.residual,
                "guaranteed": p.guaranteed,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for IdempotentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "zonal idempotents (code is a {}-design)", self.design_strength)?;
        for p in &self.pairs {
            let g = match p.guaranteed {
                Some(true) => "forced",
                Some(false) => "not forced",
                None => "untested",
            };
            writeln!(f, "  E{} E{}: residual {:.3e} ({g})", p.mu, p.lambda, p.residual)?;
        }
        writeln!(f, "coarse eigen-relation residual: {:.3e}", self.eigen_residual)
    }
}

/// Builds `E_mu(a, b) = Z_mu(y(a, b)) / |S|` for `|mu| <= t` with normalized
/// zonal polynomials, tests their pairwise orthogonality, and checks that
/// each coarse relation matrix acts on `E'_i = sum_{|mu| = i} E_mu` by a
/// scalar.
pub fn scheme_idempotents(code: &Code, r: &RelationPartition, t: u32, tol: f64) -> Result<IdempotentReport> {
    if r.size != code.len() {
        return Err(Error::DimensionMismatch(format!("partition of {} members, code of {}", r.size, code.len())));
    }
    let basis = ZonalBasis::with_degree(code.m(), code.n(), t.max(STABLE_DEGREE), false)?;
    let size = code.len();
    let angles = pair_angles(code)?;
    let mut idems: Vec<(Partition, DMatrix<f64>)> = Vec::new();
    for z in basis.zonals().iter().filter(|z| z.mu().size() <= t) {
        let z = normalize_zonal(z)?;
        let f = CompiledPoly::new(z.poly())?;
        let diag = f.evaluate(&vec![1.0; code.m()]);
        let mut e = DMatrix::from_element(size, size, diag / size as f64);
        for (i, row) in angles.iter().enumerate() {
            for (off, y) in row.iter().enumerate() {
                let j = i + 1 + off;
                let v = f.evaluate(y) / size as f64;
                e[(i, j)] = v;
                e[(j, i)] = v;
            }
        }
        idems.push((z.mu().clone(), e));
    }

    let available = STABLE_DEGREE.min(2 * t);
    let strength = design_strength_with(code, available, tol, false)?.strength;
    let mut pairs = Vec::new();
    for (a, (mu, ea)) in idems.iter().enumerate() {
        for (lambda, eb) in &idems[a..] {
            let product = ea * eb;
            let residual = if mu == lambda { (product - ea).norm() } else { product.norm() };
            let need = mu.size() + lambda.size();
            let guaranteed = if need <= strength {
                Some(true)
            } else if strength < available {
                Some(false)
            } else {
                None
            };
            pairs.push(IdempotentPair {
                mu: mu.clone(),
                lambda: lambda.clone(),
                residual,
                guaranteed,
            });
        }
    }
    let max_residual = pairs.iter().map(|p| p.residual).fold(0.0, f64::max);

    let coarse = r.coarsen(tol)?;
    let coarse_e: Vec<DMatrix<f64>> = (0..=t)
        .map(|i| {
            idems
                .iter()
                .filter(|(mu, _)| mu.size() == i)
                .fold(DMatrix::zeros(size, size), |acc, (_, e)| acc + e)
        })
        .collect();
    let mut eigen_residual: f64 = 0.0;
    let mut eigenvalues = Vec::new();
    for alpha in 0..coarse.class_count() {
        let a = coarse.relation_matrix(alpha);
        let mut row = Vec::new();
        for e in &coarse_e {
            let ae = &a * e;
            let norm2 = e.norm_squared();
            let lambda = if norm2 > 0.0 { ae.dot(e) / norm2 } else { 0.0 };
            let resid = (ae - e * lambda).norm();
            let scale = e.norm().max(f64::MIN_POSITIVE);
            eigen_residual = eigen_residual.max(resid / scale);
            row.push(lambda);
        }
        eigenvalues.push(row);
    }
    Ok(IdempotentReport {
        pairs,
        max_residual,
        eigen_residual,
        eigenvalues,
        design_strength: strength,
    })
}
