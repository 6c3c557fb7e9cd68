//! Zonal orthogonal polynomials of complex Grassmannians.

mod montecarlo;
mod polynomial;

pub use montecarlo::{mc_average, mc_pair_integral, mc_zonal_inner, reference_subspace, McEstimate, MC_BLOCK};
pub use polynomial::{
    annihilator_sympoly, expand_in_zonal, normalize_zonal, zonal_explicit, zonal_general, CompiledPoly, GeneralZonal,
    ZonalBasis, ZonalExpansion, ZonalPolynomial, ZonalValidation, STABLE_DEGREE,
};
