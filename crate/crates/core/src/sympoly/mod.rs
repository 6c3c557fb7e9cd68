//! Partitions, exact symmetric polynomials in the normalized Schur basis,
//! hypergeometric coefficients and representation dimensions.

mod dims;
mod monomial;
mod partition;
mod rational;
mod symmetric;

pub use dims::{binomial, dim_h, dim_hk, q_binomial, weyl_dim};
pub use monomial::{MonomialPoly, Scalar};
pub use partition::{partitions_of, partitions_up_to, Partition};
pub use rational::{ascending_product, frac, hypergeom_coeff, parse_rational, rat, to_f64, Rational};
pub use symmetric::{gen_binomial, schur_at_ones, schur_eval, schur_monomial, SymmetricPolynomial};

pub(crate) use rational::fmt_rational;
