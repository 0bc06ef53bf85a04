//! Python bindings: codes as `Code` objects, family constructors, distances
//! and the four surgery operations.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use qsurg_core::css::{Basis, CssCode};
use qsurg_core::distance::{
    distance_exact, distance_upper_random, dressed_distance, GaugeSpec, Method, DEFAULT_SEED, DEFAULT_TRIALS,
};
use qsurg_core::error::Error;
use qsurg_core::families;
use qsurg_core::gf2::{BitMatrix, BitVector};
use qsurg_core::io::{parse_code, write_code, MergeReport};
use qsurg_core::logicals::{is_irreducible, logical_basis};
use qsurg_core::ring::{parse_poly, Moduli};
use qsurg_core::surgery::{self, MergeResult};

create_exception!(qsurg, QsurgError, PyException);
create_exception!(qsurg, NoSpanError, QsurgError);
create_exception!(qsurg, NotIrreducibleError, QsurgError);
create_exception!(qsurg, OverlapError, QsurgError);
create_exception!(qsurg, NoLogicalsError, QsurgError);

fn to_py(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::NoSpan => NoSpanError::new_err(msg),
        Error::NotIrreducible => NotIrreducibleError::new_err(msg),
        Error::Overlap(_) => OverlapError::new_err(msg),
        Error::NoLogicals => NoLogicalsError::new_err(msg),
        Error::Parse { .. } | Error::InvalidSpec(_) | Error::InvalidArgument(_) | Error::Shape(_) => {
            PyValueError::new_err(msg)
        }
        _ => QsurgError::new_err(msg),
    }
}

fn basis(s: &str) -> PyResult<Basis> {
    s.parse().map_err(to_py)
}

fn matrix(rows: Vec<Vec<u8>>, cols: usize) -> PyResult<BitMatrix> {
    if rows.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err(format!("every row must have {cols} entries")));
    }
    Ok(BitMatrix::from_dense(cols, &rows))
}

fn dense(m: &BitMatrix) -> Vec<Vec<u8>> {
    m.row_vectors().iter().map(BitVector::to_bits).collect()
}

fn vector(bits: Vec<u8>) -> PyResult<BitVector> {
    if bits.iter().any(|&b| b > 1) {
        return Err(PyValueError::new_err("vector entries must be 0 or 1"));
    }
    Ok(BitVector::from_bools(bits.into_iter().map(|b| b == 1)))
}

/// A CSS code given by its Z and X parity-check matrices.
#[pyclass(name = "Code", module = "qsurg", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCode {
    inner: CssCode,
}

#[pymethods]
impl PyCode {
    /// Build from two lists of 0/1 rows over `n` qubits.
    #[new]
    #[pyo3(signature = (pz, px, n=None))]
    fn new(pz: Vec<Vec<u8>>, px: Vec<Vec<u8>>, n: Option<usize>) -> PyResult<Self> {
        let n = n
            .or_else(|| pz.first().or(px.first()).map(Vec::len))
            .ok_or_else(|| PyValueError::new_err("pass n for a code without checks"))?;
        let inner = CssCode::new(matrix(pz, n)?, matrix(px, n)?).map_err(to_py)?;
        Ok(Self { inner })
    }

    /// Parse the text code-file format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: parse_code(text).map_err(to_py)?,
        })
    }

    fn to_text(&self) -> String {
        write_code(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn pz(&self) -> Vec<Vec<u8>> {
        dense(self.inner.pz())
    }

    #[getter]
    fn px(&self) -> Vec<Vec<u8>> {
        dense(self.inner.px())
    }

    /// Maximum check weight and qubit degree of each type, and their maximum `omega`.
    fn weights(&self) -> Vec<(String, usize)> {
        let w = self.inner.weights();
        vec![
            ("w_z".into(), w.w_z),
            ("w_x".into(), w.w_x),
            ("q_z".into(), w.q_z),
            ("q_x".into(), w.q_x),
            ("omega".into(), w.omega),
        ]
    }

    /// Logical representatives of one type, as 0/1 lists.
    #[pyo3(signature = (basis_name="Z"))]
    fn logicals(&self, basis_name: &str) -> PyResult<Vec<Vec<u8>>> {
        let b = basis(basis_name)?;
        Ok(logical_basis(&self.inner).reps(b).iter().map(BitVector::to_bits).collect())
    }

    #[pyo3(signature = (v, basis_name="Z"))]
    fn is_irreducible(&self, v: Vec<u8>, basis_name: &str) -> PyResult<bool> {
        is_irreducible(&self.inner, &vector(v)?, basis(basis_name)?).map_err(to_py)
    }

    /// Exact distance, or a random information-set upper bound when `trials` is given.
    #[pyo3(signature = (basis_name="Z", trials=None, seed=DEFAULT_SEED))]
    fn distance(&self, py: Python<'_>, basis_name: &str, trials: Option<usize>, seed: u64) -> PyResult<usize> {
        let b = basis(basis_name)?;
        let code = &self.inner;
        let report = py.detach(|| match trials {
            Some(t) => distance_upper_random(code, b, t, seed),
            None => distance_exact(code, b, None),
        });
        Ok(report.map_err(to_py)?.value)
    }

    fn __repr__(&self) -> String {
        format!("Code(n={}, k={}, mz={}, mx={})", self.inner.n(), self.inner.k(), self.inner.mz(), self.inner.mx())
    }
}

/// The outcome of a merge or measurement.
#[pyclass(name = "Merge", module = "qsurg", frozen)]
struct PyMerge {
    inner: MergeResult,
}

#[pymethods]
impl PyMerge {
    #[getter]
    fn merged(&self) -> PyCode {
        PyCode {
            inner: self.inner.merged.clone(),
        }
    }

    #[getter]
    fn new_qubits(&self) -> Vec<usize> {
        self.inner.new_qubits.clone()
    }

    #[getter]
    fn new_z_checks(&self) -> Vec<usize> {
        self.inner.new_z_checks.clone()
    }

    #[getter]
    fn new_x_checks(&self) -> Vec<usize> {
        self.inner.new_x_checks.clone()
    }

    #[getter]
    fn old_logicals(&self) -> usize {
        self.inner.old_z_logicals.len()
    }

    #[getter]
    fn new_logicals(&self) -> usize {
        self.inner.new_z_logicals.len()
    }

    fn coequaliser_is_valid(&self) -> PyResult<bool> {
        self.inner.validate_coequaliser().map_err(to_py)
    }

    /// Lighter of the two dressed distances with the new logicals gauged.
    #[pyo3(signature = (trials=DEFAULT_TRIALS, seed=DEFAULT_SEED))]
    fn dressed_distance(&self, py: Python<'_>, trials: usize, seed: u64) -> PyResult<usize> {
        let gauge = GaugeSpec {
            gauge_z: self.inner.new_z_logicals.clone(),
            gauge_x: self.inner.new_x_logicals.clone(),
        };
        let merged = &self.inner.merged;
        let r = py.detach(|| dressed_distance(merged, &gauge, Method::Random { trials, seed }));
        Ok(r.map_err(to_py)?.value)
    }

    /// The `key = value` report text.
    fn report(&self) -> String {
        MergeReport::from_result(&self.inner).to_text()
    }
}

fn merge(r: qsurg_core::Result<MergeResult>) -> PyResult<PyMerge> {
    Ok(PyMerge { inner: r.map_err(to_py)? })
}

#[pyfunction]
#[pyo3(signature = (c, d, u, v, basis_name="Z", r=1))]
fn external_merge(c: &PyCode, d: &PyCode, u: Vec<u8>, v: Vec<u8>, basis_name: &str, r: usize) -> PyResult<PyMerge> {
    merge(surgery::external_merge(&c.inner, &d.inner, &vector(u)?, &vector(v)?, basis(basis_name)?, r))
}

#[pyfunction]
#[pyo3(signature = (c, d, u, v, basis_name="Z"))]
fn direct_merge(c: &PyCode, d: &PyCode, u: Vec<u8>, v: Vec<u8>, basis_name: &str) -> PyResult<PyMerge> {
    merge(surgery::direct_merge(&c.inner, &d.inner, &vector(u)?, &vector(v)?, basis(basis_name)?))
}

#[pyfunction]
#[pyo3(signature = (c, u, v, basis_name="Z", r=1))]
fn internal_merge(c: &PyCode, u: Vec<u8>, v: Vec<u8>, basis_name: &str, r: usize) -> PyResult<PyMerge> {
    merge(surgery::internal_merge(&c.inner, &vector(u)?, &vector(v)?, basis(basis_name)?, r))
}

#[pyfunction]
#[pyo3(signature = (c, u, basis_name="Z", r=1))]
fn measure(c: &PyCode, u: Vec<u8>, basis_name: &str, r: usize) -> PyResult<PyMerge> {
    merge(surgery::single_qubit_measure(&c.inner, &vector(u)?, basis(basis_name)?, r))
}

fn code(r: qsurg_core::Result<CssCode>) -> PyResult<PyCode> {
    Ok(PyCode { inner: r.map_err(to_py)? })
}

#[pyfunction]
fn shor() -> PyCode {
    PyCode { inner: families::shor() }
}

#[pyfunction]
fn steane() -> PyCode {
    PyCode {
        inner: families::steane(),
    }
}

#[pyfunction]
fn qrm15() -> PyCode {
    PyCode {
        inner: families::qrm15(),
    }
}

#[pyfunction]
fn surface(d: usize) -> PyResult<PyCode> {
    code(families::surface(d))
}

#[pyfunction]
fn rotated_surface(d: usize) -> PyResult<PyCode> {
    code(families::rotated_surface(d))
}

#[pyfunction]
fn toric(l1: usize, l2: usize) -> PyResult<PyCode> {
    code(families::toric(l1, l2))
}

#[pyfunction]
fn lcs(big_l: usize, l: usize) -> PyResult<PyCode> {
    code(families::lcs(big_l, l))
}

#[pyfunction]
fn gross() -> PyCode {
    PyCode {
        inner: families::gross(),
    }
}

/// Generalised bicycle code over `F2[x]/(x^l - 1)`.
#[pyfunction]
fn gb(l: usize, a: &str, b: &str) -> PyResult<PyCode> {
    let ring = Moduli::univariate(l);
    let (a, b) = (parse_poly(a, ring).map_err(to_py)?, parse_poly(b, ring).map_err(to_py)?);
    code(families::gb(&a, &b))
}

/// Bivariate bicycle code over `F2[x,y]/(x^l - 1, y^m - 1)`.
#[pyfunction]
fn bb(l: usize, m: usize, a: &str, b: &str) -> PyResult<PyCode> {
    let ring = Moduli::bivariate(l, m);
    let (a, b) = (parse_poly(a, ring).map_err(to_py)?, parse_poly(b, ring).map_err(to_py)?);
    code(families::bb(&a, &b))
}

#[pymodule]
fn qsurg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyCode>()?;
    m.add_class::<PyMerge>()?;
    m.add("QsurgError", py.get_type::<QsurgError>())?;
    m.add("NoSpanError", py.get_type::<NoSpanError>())?;
    m.add("NotIrreducibleError", py.get_type::<NotIrreducibleError>())?;
    m.add("OverlapError", py.get_type::<OverlapError>())?;
    m.add("NoLogicalsError", py.get_type::<NoLogicalsError>())?;
    for f in [
        wrap_pyfunction!(shor, m)?,
        wrap_pyfunction!(steane, m)?,
        wrap_pyfunction!(qrm15, m)?,
        wrap_pyfunction!(surface, m)?,
        wrap_pyfunction!(rotated_surface, m)?,
        wrap_pyfunction!(toric, m)?,
        wrap_pyfunction!(lcs, m)?,
        wrap_pyfunction!(gross, m)?,
        wrap_pyfunction!(gb, m)?,
        wrap_pyfunction!(bb, m)?,
        wrap_pyfunction!(external_merge, m)?,
        wrap_pyfunction!(direct_merge, m)?,
        wrap_pyfunction!(internal_merge, m)?,
        wrap_pyfunction!(measure, m)?,
    ] {
        m.add_function(f)?;
    }
    Ok(())
}
