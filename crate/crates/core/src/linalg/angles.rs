use nalgebra::DVector;

use super::subspace::{complete_basis, CMatrix, Subspace, C64};
use crate::error::{Error, Result};

/// Angle values further than this outside `[0, 1]` indicate a broken input
/// rather than rounding.
pub const ANGLE_HEALTH_TOL: f64 = 1e-8;

/// Squared cosines `y_i = cos^2 theta_i` of the principal angles, sorted
/// nonincreasing and clamped to `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleVector(Vec<f64>);

impl AngleVector {
    /// Sorts and clamps raw values, failing if any lies outside
    /// `[-1e-8, 1 + 1e-8]`.
    pub fn from_raw(mut values: Vec<f64>) -> Result<Self> {
        for &v in &values {
            if !(-ANGLE_HEALTH_TOL..=1.0 + ANGLE_HEALTH_TOL).contains(&v) {
                return Err(Error::NumericalHealth(format!("principal angle value {v} outside [0, 1]")));
            }
        }
        for v in values.iter_mut() {
            *v = v.clamp(0.0, 1.0);
        }
        values.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
        Ok(AngleVector(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// The angles themselves, `theta_i = arccos(sqrt(y_i))`.
    pub fn radians(&self) -> Vec<f64> {
        self.0.iter().map(|y| y.sqrt().acos()).collect()
    }

    /// Max-norm distance to another vector of the same length.
    pub fn max_distance(&self, other: &AngleVector) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

fn check_same_ambient(a: &Subspace, b: &Subspace) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(format!("ambient dimensions {} and {}", a.n(), b.n())));
    }
    Ok(())
}

fn check_same_shape(a: &Subspace, b: &Subspace) -> Result<()> {
    check_same_ambient(a, b)?;
    if a.m() != b.m() {
        return Err(Error::DimensionMismatch(format!("ranks {} and {}", a.m(), b.m())));
    }
    Ok(())
}

/// `tr(P_a P_b)`, computed as `||M_a^* M_b||_F^2`.
pub fn trace_inner_product(a: &Subspace, b: &Subspace) -> Result<f64> {
    check_same_ambient(a, b)?;
    let g = a.basis().adjoint() * b.basis();
    Ok(g.iter().map(|z| z.norm_sqr()).sum())
}

/// Chordal distance `sqrt(m - tr(P_a P_b))`.
pub fn chordal_distance(a: &Subspace, b: &Subspace) -> Result<f64> {
    check_same_shape(a, b)?;
    let t = trace_inner_product(a, b)?;
    Ok((a.m() as f64 - t).max(0.0).sqrt())
}

/// Principal angles as squared singular values of `M_a^* M_b`.
pub fn principal_angles(a: &Subspace, b: &Subspace) -> Result<AngleVector> {
    check_same_shape(a, b)?;
    let g = a.basis().adjoint() * b.basis();
    let sv = g.singular_values();
    AngleVector::from_raw(sv.iter().map(|s| s * s).collect())
}

/// SVD of `g` with singular triples sorted by decreasing singular value.
fn sorted_svd(g: &CMatrix) -> (CMatrix, Vec<f64>, CMatrix) {
    let svd = g.clone().svd(true, true);
    let u = svd.u.expect("requested u");
    let v_t = svd.v_t.expect("requested v_t");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| {
        svd.singular_values[j]
            .partial_cmp(&svd.singular_values[i])
            .expect("finite")
    });
    let k = order.len();
    let mut u_sorted = CMatrix::zeros(u.nrows(), k);
    let mut v_sorted = CMatrix::zeros(v_t.ncols(), k);
    let mut s_sorted = Vec::with_capacity(k);
    let v = v_t.adjoint();
    for (dst, &src) in order.iter().enumerate() {
        u_sorted.set_column(dst, &u.column(src));
        v_sorted.set_column(dst, &v.column(src));
        s_sorted.push(svd.singular_values[src]);
    }
    (u_sorted, s_sorted, v_sorted)
}

/// Canonical form of a pair of subspaces under the unitary group.
///
/// Returns `(U M_a W, U M_b V)` for a unitary `U` and unitary changes of
/// basis `W`, `V`, where the first matrix is `(I_m; 0)` and the second is
/// `(diag cos theta; diag sin theta; 0)`.
pub fn canonical_pair(a: &Subspace, b: &Subspace) -> Result<(CMatrix, CMatrix)> {
    check_same_shape(a, b)?;
    let (n, m) = (a.n(), a.m());
    if 2 * m > n {
        return Err(Error::RankTooLarge { m, n });
    }
    let g = a.basis().adjoint() * b.basis();
    let (w, sigma, v) = sorted_svd(&g);
    let a_rot = a.basis() * &w;
    let b_rot = b.basis() * &v;

    // Components of the rotated b-basis orthogonal to a: mutually orthogonal
    // with norms sin(theta_i). Zero components get filler directions.
    let mut known: Vec<DVector<C64>> = (0..m).map(|j| a_rot.column(j).into_owned()).collect();
    let mut slots: Vec<Option<usize>> = Vec::with_capacity(m);
    for j in 0..m {
        let mut r = b_rot.column(j) - a_rot.column(j) * C64::new(sigma[j], 0.0);
        for col in &known {
            let coeff = col.dotc(&r);
            r -= col * coeff;
        }
        let norm = r.norm();
        if norm > 1e-12 {
            slots.push(Some(known.len()));
            known.push(r / C64::new(norm, 0.0));
        } else {
            slots.push(None);
        }
    }
    let completed = complete_basis(&CMatrix::from_columns(&known));
    let mut filler = known.len();
    let mut frame = CMatrix::zeros(n, 2 * m);
    for j in 0..m {
        frame.set_column(j, &completed.column(j));
        let src = match slots[j] {
            Some(k) => k,
            None => {
                filler += 1;
                filler - 1
            }
        };
        frame.set_column(m + j, &completed.column(src));
    }
    let unitary_cols = complete_basis(&frame);
    let u = unitary_cols.adjoint();
    Ok((&u * a_rot, &u * b_rot))
}
