use rayon::prelude::*;
use serde_json::{json, Value};

use super::relations::pair_angles;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, Code, C64};
use crate::sympoly::{to_f64, Partition};
use crate::zonal::{normalize_zonal, CompiledPoly, ZonalBasis, STABLE_DEGREE};

/// Largest `n^2` for which the two-design tensor is formed.
pub const MAX_TENSOR_DIM: usize = 4096;

/// `(1/|S|^2) sum_{a,b} Z_mu(y(a,b)) / Z_mu(1, ..., 1)` for each
/// `0 < |mu| <= degree`, using normalized zonal polynomials.
pub fn zonal_sums(code: &Code, basis: &ZonalBasis) -> Result<Vec<(Partition, f64)>> {
    if code.m() != basis.m() || code.n() != basis.n() {
        return Err(Error::DimensionMismatch(format!(
            "code in G({}, {}), zonal basis for G({}, {})",
            code.m(),
            code.n(),
            basis.m(),
            basis.n()
        )));
    }
    let angles = pair_angles(code)?;
    let size = code.len() as f64;
    basis
        .zonals()
        .iter()
        .filter(|z| !z.mu().is_empty())
        .map(|z| {
            let z = normalize_zonal(z)?;
            let at_ones = to_f64(&z.at_ones());
            let f = CompiledPoly::new(z.poly())?;
            // Row sums in parallel, then a fixed sequential reduction.
            let rows: Vec<f64> = angles
                .par_iter()
                .map(|row| row.iter().map(|y| f.evaluate(y)).sum::<f64>())
                .collect();
            let off: f64 = rows.iter().sum();
            let total = size * at_ones + 2.0 * off;
            Ok((z.mu().clone(), total / (size * size * at_ones)))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct DesignStrength {
    pub strength: u32,
    pub t_max: u32,
    /// Relative zonal sums, one per partition.
    pub sums: Vec<(Partition, f64)>,
}

impl DesignStrength {
    pub fn to_json(&self) -> Value {
        json!({
            "strength": self.strength,
            "t_max": self.t_max,
            "sums": self.sums.iter().map(|(mu, v)| json!({"partition": mu.to_string(), "relative_sum": v})).collect::<Vec<_>>(),
        })
    }
}

/// The largest `t <= t_max` for which every relative zonal sum with
/// `1 <= |mu| <= t` is below `tol`.
pub fn design_strength(code: &Code, t_max: u32, tol: f64) -> Result<DesignStrength> {
    design_strength_with(code, t_max, tol, false)
}

/// As [`design_strength`]; `experimental` admits degrees above the stable
/// zonal degree.
pub fn design_strength_with(code: &Code, t_max: u32, tol: f64, experimental: bool) -> Result<DesignStrength> {
    let basis = ZonalBasis::with_degree(code.m(), code.n(), t_max.max(STABLE_DEGREE), experimental)?;
    let sums: Vec<(Partition, f64)> = zonal_sums(code, &basis)?
        .into_iter()
        .filter(|(mu, _)| mu.size() <= t_max)
        .collect();
    let mut strength = 0;
    for t in 1..=t_max {
        if sums.iter().filter(|(mu, _)| mu.size() == t).all(|(_, v)| *v < tol) {
            strength = t;
        } else {
            break;
        }
    }
    Ok(DesignStrength { strength, t_max, sums })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DesignCheck {
    pub holds: bool,
    pub residual: f64,
}

/// Whether the average projector is `(m/n) I`, by maximum entry deviation.
pub fn is_one_design(code: &Code, tol: f64) -> Result<DesignCheck> {
    let (n, m) = (code.n(), code.m());
    if code.is_empty() {
        return Err(Error::OutOfRange("empty code".into()));
    }
    let parts: Vec<CMatrix> = code.members().par_iter().map(|s| s.projection()).collect();
    let sum = parts.iter().fold(CMatrix::zeros(n, n), |acc, p| acc + p);
    let avg = sum / C64::new(code.len() as f64, 0.0);
    let target = CMatrix::identity(n, n) * C64::new(m as f64 / n as f64, 0.0);
    let residual = (avg - target).iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(DesignCheck {
        holds: residual < tol,
        residual,
    })
}

/// Whether `(1/|S|) sum P_a (x) P_a` equals
/// `m/(n(n^2 - 1)) [(nm - 1) I + (n - m) T]`, `T` the swap, by maximum entry
/// deviation. Entries are formed row by row rather than as one tensor.
pub fn is_two_design(code: &Code, tol: f64) -> Result<DesignCheck> {
    let (n, m) = (code.n(), code.m());
    if n * n > MAX_TENSOR_DIM {
        return Err(Error::SizeLimit(format!("n^2 = {} exceeds {MAX_TENSOR_DIM}", n * n)));
    }
    if code.is_empty() || n < 2 {
        return Err(Error::OutOfRange("two-design check needs a nonempty code with n >= 2".into()));
    }
    let projections: Vec<CMatrix> = code.members().par_iter().map(|s| s.projection()).collect();
    let size = code.len() as f64;
    let scale = m as f64 / (n as f64 * (n * n - 1) as f64);
    let (id_coeff, swap_coeff) = (scale * (n * m) as f64 - scale, scale * (n - m) as f64);
    let residual = (0..n * n)
        .into_par_iter()
        .map(|row| {
            let (i, k) = (row / n, row % n);
            let mut worst: f64 = 0.0;
            for j in 0..n {
                for l in 0..n {
                    let mut acc = C64::new(0.0, 0.0);
                    for p in &projections {
                        acc += p[(i, j)] * p[(k, l)];
                    }
                    let mut expected = 0.0;
                    if i == j && k == l {
                        expected += id_coeff;
                    }
                    if i == l && k == j {
                        expected += swap_coeff;
                    }
                    worst = worst.max((acc / size - C64::new(expected, 0.0)).norm());
                }
            }
            worst
        })
        .collect::<Vec<f64>>()
        .into_iter()
        .fold(0.0, f64::max);
    Ok(DesignCheck {
        holds: residual < tol,
        residual,
    })
}
