//! The `grasscode-v1` exchange format.
//!
//! A code is stored as a single JSON object
//!
//! ```text
//! {"format":"grasscode-v1","n":4,"m":2,"subspaces":[[[[re,im],...m],...n],...]}
//! ```
//!
//! where each subspace is its `n x m` orthonormal basis written row by row.
//! Numbers use the shortest decimal form that round-trips an `f64` (at most
//! 17 significant digits), so writing is deterministic.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::code::{Code, CodeOptions};
use super::subspace::{CMatrix, Subspace, C64, DEFAULT_TOL};
use crate::error::{Error, Result};

pub const FORMAT_TAG: &str = "grasscode-v1";

#[derive(Serialize, Deserialize)]
struct CodeFile {
    format: String,
    n: usize,
    m: usize,
    subspaces: Vec<Vec<Vec<[f64; 2]>>>,
}

/// Options applied when reading a file.
#[derive(Clone, Copy, Debug)]
pub struct LoadOptions {
    /// Orthonormality tolerance for each stored basis.
    pub tol: f64,
    pub code: CodeOptions,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            tol: DEFAULT_TOL,
            code: CodeOptions::default(),
        }
    }
}

pub fn to_json(code: &Code) -> String {
    let subspaces = code
        .iter()
        .map(|s| {
            let b = s.basis();
            (0..b.nrows())
                .map(|i| (0..b.ncols()).map(|j| [b[(i, j)].re, b[(i, j)].im]).collect())
                .collect()
        })
        .collect();
    let file = CodeFile {
        format: FORMAT_TAG.to_string(),
        n: code.n(),
        m: code.m(),
        subspaces,
    };
    serde_json::to_string(&file).expect("finite floats serialize")
}

pub fn from_json(text: &str, options: LoadOptions) -> Result<Code> {
    let file: CodeFile = serde_json::from_str(text)?;
    if file.format != FORMAT_TAG {
        return Err(Error::Format(format!("unknown format tag {:?}", file.format)));
    }
    let (n, m) = (file.n, file.m);
    let mut members = Vec::with_capacity(file.subspaces.len());
    for (k, rows) in file.subspaces.into_iter().enumerate() {
        if rows.len() != n {
            return Err(Error::Format(format!("subspace {k} has {} rows, expected {n}", rows.len())));
        }
        let mut basis = CMatrix::zeros(n, m);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != m {
                return Err(Error::Format(format!(
                    "subspace {k} row {i} has {} entries, expected {m}",
                    row.len()
                )));
            }
            for (j, [re, im]) in row.into_iter().enumerate() {
                basis[(i, j)] = C64::new(re, im);
            }
        }
        members.push(Subspace::new(basis, options.tol)?);
    }
    Code::with_options(n, m, members, options.code)
}

pub fn write_code(code: &Code, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_json(code))?;
    Ok(())
}

pub fn read_code(path: impl AsRef<Path>, options: LoadOptions) -> Result<Code> {
    from_json(&fs::read_to_string(path)?, options)
}
