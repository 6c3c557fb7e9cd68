//! Python bindings for `grasscode`.
//!
//! Exact rationals cross the boundary as strings such as `"-3/7"`; reports
//! come back as plain dicts and lists.

use grasscode::analysis as an;
use grasscode::bounds as bd;
use grasscode::constructions as cs;
use grasscode::linalg::{self, format, Code};
use grasscode::sympoly::{self, Partition, Rational};
use grasscode::{Error, ErrorCategory};
use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyMemoryError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde_json::Value;

fn py_err(e: Error) -> PyErr {
    match e.category() {
        ErrorCategory::Validation => PyValueError::new_err(e.to_string()),
        ErrorCategory::Numerical => PyArithmeticError::new_err(e.to_string()),
        ErrorCategory::SizeLimit => PyMemoryError::new_err(e.to_string()),
    }
}

fn json_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    match v {
        Value::Null => Ok(py.None().into_bound(py)),
        Value::Bool(b) => b.into_bound_py_any(py),
        Value::Number(n) => match (n.as_i64(), n.as_f64()) {
            (Some(i), _) => i.into_bound_py_any(py),
            (None, Some(f)) => f.into_bound_py_any(py),
            _ => n.to_string().into_bound_py_any(py),
        },
        Value::String(s) => s.into_bound_py_any(py),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            Ok(list.into_any())
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, json_to_py(py, item)?)?;
            }
            Ok(dict.into_any())
        }
    }
}

fn rational(text: &str) -> PyResult<Rational> {
    sympoly::parse_rational(text).map_err(py_err)
}

fn partition(parts: Vec<u32>) -> PyResult<Partition> {
    Partition::new(parts).map_err(py_err)
}

/// A finite set of equal-dimension subspaces of `C^n`.
#[pyclass(name = "Code", module = "pygrasscode", frozen)]
struct PyCode {
    inner: Code,
}

#[pymethods]
impl PyCode {
    /// Builds a code from orthonormal bases given as `n x m` nested lists of
    /// complex numbers.
    #[new]
    #[pyo3(signature = (bases, tol = linalg::DEFAULT_TOL))]
    fn new(bases: Vec<Vec<Vec<Complex64>>>, tol: f64) -> PyResult<Self> {
        let first = bases.first().ok_or_else(|| PyValueError::new_err("empty code"))?;
        let n = first.len();
        let m = first.first().map_or(0, Vec::len);
        let members = bases
            .iter()
            .map(|rows| {
                if rows.len() != n || rows.iter().any(|r| r.len() != m) {
                    return Err(PyValueError::new_err(format!("every basis must be {n} x {m}")));
                }
                let mat = linalg::CMatrix::from_fn(n, m, |i, j| rows[i][j]);
                linalg::Subspace::new(mat, tol).map_err(py_err)
            })
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyCode {
            inner: Code::new(n, m, members).map_err(py_err)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (path, tol = linalg::DEFAULT_TOL))]
    fn load(path: &str, tol: f64) -> PyResult<Self> {
        let options = format::LoadOptions {
            tol,
            ..Default::default()
        };
        Ok(PyCode {
            inner: format::read_code(path, options).map_err(py_err)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (text, tol = linalg::DEFAULT_TOL))]
    fn from_json(text: &str, tol: f64) -> PyResult<Self> {
        let options = format::LoadOptions {
            tol,
            ..Default::default()
        };
        Ok(PyCode {
            inner: format::from_json(text, options).map_err(py_err)?,
        })
    }

    fn save(&self, path: &str) -> PyResult<()> {
        format::write_code(&self.inner, path).map_err(py_err)
    }

    fn to_json(&self) -> String {
        format::to_json(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn labels(&self) -> Option<Vec<String>> {
        self.inner.labels().map(<[String]>::to_vec)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Code({} subspaces of G({}, {}))", self.inner.len(), self.inner.m(), self.inner.n())
    }

    /// The orthonormal basis of member `i` as nested lists.
    fn basis(&self, i: usize) -> PyResult<Vec<Vec<Complex64>>> {
        if i >= self.inner.len() {
            return Err(PyValueError::new_err(format!("member {i} out of range")));
        }
        let b = self.inner.member(i).basis();
        Ok((0..b.nrows()).map(|r| b.row(r).iter().copied().collect()).collect())
    }

    /// Squared cosines of the principal angles between members `i` and `j`.
    fn principal_angles(&self, i: usize, j: usize) -> PyResult<Vec<f64>> {
        if i >= self.inner.len() || j >= self.inner.len() {
            return Err(PyValueError::new_err("member index out of range"));
        }
        let y = linalg::principal_angles(self.inner.member(i), self.inner.member(j)).map_err(py_err)?;
        Ok(y.values().to_vec())
    }

    fn gram(&self) -> Vec<Vec<f64>> {
        let g = self.inner.gram_matrix();
        (0..g.nrows()).map(|i| g.row(i).iter().copied().collect()).collect()
    }

    #[pyo3(signature = (tol = linalg::DEFAULT_TOL))]
    fn inner_products(&self, tol: f64) -> PyResult<Vec<f64>> {
        an::inner_product_set(&self.inner, tol).map_err(py_err)
    }

    /// `(holds, residual)` for the 1-design test.
    #[pyo3(signature = (tol = linalg::DEFAULT_TOL))]
    fn is_one_design(&self, tol: f64) -> PyResult<(bool, f64)> {
        let c = an::is_one_design(&self.inner, tol).map_err(py_err)?;
        Ok((c.holds, c.residual))
    }

    /// `(holds, residual)` for the 2-design test.
    #[pyo3(signature = (tol = linalg::DEFAULT_TOL))]
    fn is_two_design(&self, tol: f64) -> PyResult<(bool, f64)> {
        let c = an::is_two_design(&self.inner, tol).map_err(py_err)?;
        Ok((c.holds, c.residual))
    }

    #[pyo3(signature = (t_max = 2, tol = linalg::DEFAULT_TOL))]
    fn design_strength<'py>(&self, py: Python<'py>, t_max: u32, tol: f64) -> PyResult<Bound<'py, PyAny>> {
        let s = an::design_strength(&self.inner, t_max, tol).map_err(py_err)?;
        json_to_py(py, &s.to_json())
    }

    /// Angle (or, with `coarse`, inner-product) relations and the scheme
    /// closure test.
    #[pyo3(signature = (coarse = false, tol = linalg::DEFAULT_TOL))]
    fn check_scheme<'py>(&self, py: Python<'py>, coarse: bool, tol: f64) -> PyResult<Bound<'py, PyAny>> {
        let r = if coarse {
            an::coarse_relations(&self.inner, tol)
        } else {
            an::angle_classes(&self.inner, tol)
        }
        .map_err(py_err)?;
        let report = an::check_scheme(&r, tol).map_err(py_err)?;
        let dict = PyDict::new(py);
        dict.set_item("relations", json_to_py(py, &r.to_json())?)?;
        dict.set_item("scheme", json_to_py(py, &report.to_json())?)?;
        Ok(dict.into_any())
    }

    #[pyo3(signature = (t = 1, tol = linalg::DEFAULT_TOL))]
    fn audit<'py>(&self, py: Python<'py>, t: u32, tol: f64) -> PyResult<Bound<'py, PyAny>> {
        let report = an::twothree_audit(&self.inner, t, tol).map_err(py_err)?;
        json_to_py(py, &report.to_json())
    }
}

#[pyfunction]
fn pauli_code(k: u32) -> PyResult<PyCode> {
    Ok(PyCode {
        inner: cs::pauli_code(k).map_err(py_err)?,
    })
}

#[pyfunction]
fn extraspecial_code(p: u64, n: usize, k: usize) -> PyResult<PyCode> {
    Ok(PyCode {
        inner: cs::extraspecial_code(p, n, k).map_err(py_err)?,
    })
}

#[pyfunction]
fn mub_code(p: u64) -> PyResult<PyCode> {
    Ok(PyCode {
        inner: cs::mub_code(p).map_err(py_err)?,
    })
}

/// `size` Haar-random `m`-dimensional subspaces of `C^n`.
#[pyfunction]
#[pyo3(signature = (n, m, size, seed = 0))]
fn haar_code(n: usize, m: usize, size: usize, seed: u64) -> PyResult<PyCode> {
    let mut rng = linalg::seeded_rng(seed);
    let members = (0..size)
        .map(|_| linalg::haar_subspace_with(&mut rng, n, m))
        .collect::<Result<Vec<_>, _>>()
        .map_err(py_err)?;
    Ok(PyCode {
        inner: Code::new(n, m, members).map_err(py_err)?,
    })
}

#[pyfunction]
fn one_distance_bound<'py>(py: Python<'py>, alpha: &str, m: usize, n: usize) -> PyResult<Bound<'py, PyAny>> {
    json_to_py(py, &bd::one_distance_bound(&rational(alpha)?, m, n).to_json())
}

#[pyfunction]
fn two_distance_bound<'py>(py: Python<'py>, alpha: &str, beta: &str, m: usize, n: usize) -> PyResult<Bound<'py, PyAny>> {
    let b = bd::two_distance_bound(&rational(alpha)?, &rational(beta)?, m, n).map_err(py_err)?;
    json_to_py(py, &b.to_json())
}

/// `(homogeneous bound, dim H_k(m, n))` as decimal strings.
#[pyfunction]
fn absolute_code_bound(k: u32, m: usize, n: usize) -> PyResult<(String, String)> {
    let (hom, h) = bd::absolute_code_bound(k, m, n).map_err(py_err)?;
    Ok((hom.to_string(), h.to_string()))
}

#[pyfunction]
fn design_absolute_bound(t: u32, m: usize, n: usize) -> PyResult<String> {
    Ok(bd::design_absolute_bound(t, m, n).map_err(py_err)?.to_string())
}

/// `(simplex alpha, orthoplex beta)` for `size` points of `G(m, n)`.
#[pyfunction]
fn simplex_orthoplex(size: u64, m: usize, n: usize) -> PyResult<(String, String)> {
    let s = bd::simplex_orthoplex(size, m, n).map_err(py_err)?;
    Ok((s.simplex_alpha.to_string(), s.orthoplex_beta.to_string()))
}

#[pyfunction]
fn bound_table<'py>(py: Python<'py>, m: usize, n: usize) -> PyResult<Bound<'py, PyAny>> {
    json_to_py(py, &bd::bound_table(m, n).map_err(py_err)?.to_json())
}

#[pyfunction]
fn dim_h(mu: Vec<u32>, n: usize) -> PyResult<String> {
    Ok(sympoly::dim_h(&partition(mu)?, n).map_err(py_err)?.to_string())
}

#[pyfunction]
fn dim_hk(k: u32, m: usize, n: usize) -> PyResult<String> {
    Ok(sympoly::dim_hk(k, m, n).map_err(py_err)?.to_string())
}

/// The zonal polynomial `Z_mu` of `G(m, n)` in the shifted Schur basis,
/// as `{partition: coefficient}` with both sides as strings.
#[pyfunction]
#[pyo3(signature = (mu, m, n, normalized = false))]
fn zonal(mu: Vec<u32>, m: usize, n: usize, normalized: bool) -> PyResult<Vec<(Vec<u32>, String)>> {
    let mut z = grasscode::zonal::zonal_explicit(&partition(mu)?, m, n).map_err(py_err)?;
    if normalized {
        z = grasscode::zonal::normalize_zonal(&z).map_err(py_err)?;
    }
    Ok(z
        .poly()
        .coeffs()
        .iter()
        .map(|(p, c)| (p.parts().to_vec(), c.to_string()))
        .collect())
}

#[pymodule]
fn pygrasscode(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCode>()?;
    m.add_function(wrap_pyfunction!(pauli_code, m)?)?;
    m.add_function(wrap_pyfunction!(extraspecial_code, m)?)?;
    m.add_function(wrap_pyfunction!(mub_code, m)?)?;
    m.add_function(wrap_pyfunction!(haar_code, m)?)?;
    m.add_function(wrap_pyfunction!(one_distance_bound, m)?)?;
    m.add_function(wrap_pyfunction!(two_distance_bound, m)?)?;
    m.add_function(wrap_pyfunction!(absolute_code_bound, m)?)?;
    m.add_function(wrap_pyfunction!(design_absolute_bound, m)?)?;
    m.add_function(wrap_pyfunction!(simplex_orthoplex, m)?)?;
    m.add_function(wrap_pyfunction!(bound_table, m)?)?;
    m.add_function(wrap_pyfunction!(dim_h, m)?)?;
    m.add_function(wrap_pyfunction!(dim_hk, m)?)?;
    m.add_function(wrap_pyfunction!(zonal, m)?)?;
    Ok(())
}
