use nalgebra::DMatrix;
use rayon::prelude::*;

use super::angles::trace_inner_product;
use super::subspace::{Subspace, DEFAULT_TOL};
use crate::error::{Error, Result};

/// A finite set of subspaces of a common Grassmannian `G(m, n)`.
#[derive(Clone, Debug)]
pub struct Code {
    n: usize,
    m: usize,
    members: Vec<Subspace>,
    labels: Option<Vec<String>>,
}

/// Controls the duplicate scan in [`Code::with_options`].
#[derive(Clone, Copy, Debug)]
pub struct CodeOptions {
    pub allow_duplicates: bool,
    /// Distinct members must satisfy `tr(P_a P_b) < m - duplicate_tol`.
    pub duplicate_tol: f64,
}

impl Default for CodeOptions {
    fn default() -> Self {
        CodeOptions {
            allow_duplicates: false,
            duplicate_tol: DEFAULT_TOL,
        }
    }
}

impl Code {
    pub fn new(n: usize, m: usize, members: Vec<Subspace>) -> Result<Self> {
        Self::with_options(n, m, members, CodeOptions::default())
    }

    pub fn with_options(n: usize, m: usize, members: Vec<Subspace>, options: CodeOptions) -> Result<Self> {
        let code = Self::unchecked(n, m, members)?;
        if !options.allow_duplicates {
            code.check_duplicates(options.duplicate_tol)?;
        }
        Ok(code)
    }

    /// Shape checks only. Used by constructions whose members are distinct
    /// by construction.
    pub(crate) fn unchecked(n: usize, m: usize, members: Vec<Subspace>) -> Result<Self> {
        for (i, s) in members.iter().enumerate() {
            if s.n() != n || s.m() != m {
                return Err(Error::DimensionMismatch(format!(
                    "member {i} lies in G({}, {}), code is in G({m}, {n})",
                    s.m(),
                    s.n()
                )));
            }
        }
        Ok(Code {
            n,
            m,
            members,
            labels: None,
        })
    }

    fn check_duplicates(&self, tol: f64) -> Result<()> {
        let limit = self.m as f64 - tol;
        let found = (0..self.members.len()).into_par_iter().find_map_first(|i| {
            ((i + 1)..self.members.len()).find_map(|j| {
                let v = trace_inner_product(&self.members[i], &self.members[j]).ok()?;
                (v >= limit).then_some((i, j, v))
            })
        });
        match found {
            Some((first, second, value)) => Err(Error::DuplicateMember { first, second, value }),
            None => Ok(()),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.members.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} members",
                labels.len(),
                self.members.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &Subspace {
        &self.members[i]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subspace> {
        self.members.iter()
    }

    /// Matrix of trace inner products. Each entry is computed once from the
    /// upper triangle and mirrored, so the result is exactly symmetric.
    pub fn gram_matrix(&self) -> DMatrix<f64> {
        let size = self.members.len();
        let rows: Vec<Vec<f64>> = (0..size)
            .into_par_iter()
            .map(|i| {
                (i..size)
                    .map(|j| trace_inner_product(&self.members[i], &self.members[j]).expect("shared shape"))
                    .collect()
            })
            .collect();
        let mut gram = DMatrix::zeros(size, size);
        for (i, row) in rows.into_iter().enumerate() {
            for (offset, v) in row.into_iter().enumerate() {
                let j = i + offset;
                gram[(i, j)] = v;
                gram[(j, i)] = v;
            }
        }
        gram
    }
}

impl<'a> IntoIterator for &'a Code {
    type Item = &'a Subspace;
    type IntoIter = std::slice::Iter<'a, Subspace>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{haar_subspace, CMatrix};

    #[test]
    fn singleton_gram() {
        let s = haar_subspace(4, 2, 1).unwrap();
        let code = Code::new(4, 2, vec![s]).unwrap();
        let g = code.gram_matrix();
        assert_eq!(g.shape(), (1, 1));
        assert!((g[(0, 0)] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn duplicates_rejected_unless_allowed() {
        let s = Subspace::from_basis(&CMatrix::identity(3, 1)).unwrap();
        let members = vec![s.clone(), s];
        assert!(matches!(
            Code::new(3, 1, members.clone()),
            Err(Error::DuplicateMember { first: 0, second: 1, .. })
        ));
        let options = CodeOptions {
            allow_duplicates: true,
            ..Default::default()
        };
        assert_eq!(Code::with_options(3, 1, members, options).unwrap().len(), 2);
    }

    #[test]
    fn mixed_shapes_rejected() {
        let a = haar_subspace(4, 2, 1).unwrap();
        let b = haar_subspace(4, 1, 2).unwrap();
        assert!(Code::new(4, 2, vec![a, b]).is_err());
    }

    #[test]
    fn gram_is_symmetric() {
        let members: Vec<_> = (0..6).map(|s| haar_subspace(5, 2, s).unwrap()).collect();
        let g = Code::new(5, 2, members).unwrap().gram_matrix();
        assert_eq!(g, g.transpose());
        for i in 0..6 {
            assert!((g[(i, i)] - 2.0).abs() < 1e-12);
        }
    }
}
