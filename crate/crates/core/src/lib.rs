//! Codes in complex Grassmannians: subspaces and principal angles, exact
//! symmetric polynomials, zonal functions, linear-programming bounds,
//! explicit constructions and analysis of codes and designs.

pub mod error;
pub mod linalg;
pub mod sympoly;
pub mod zonal;
pub mod bounds;
pub mod constructions;
pub mod analysis;
pub mod cli;

pub use error::{Error, ErrorCategory, Result};
