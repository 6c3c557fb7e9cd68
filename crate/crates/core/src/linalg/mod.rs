//! Subspaces of `C^n`, trace inner products, principal angles and codes.

mod angles;
mod code;
pub mod format;
mod haar;
mod subspace;

pub use angles::{canonical_pair, chordal_distance, principal_angles, trace_inner_product, AngleVector, ANGLE_HEALTH_TOL};
pub use code::{Code, CodeOptions};
pub use haar::{complex_gaussian, haar_subspace, haar_subspace_with, haar_unitary, seeded_rng};
pub use subspace::{orthonormality_deviation, CMatrix, Subspace, C64, DEFAULT_TOL, RANK_THRESHOLD};
