//! Python bindings: zigzags, DPD pairs and the classification predicates.
//! Rationals cross the boundary as strings such as `"-1/2"`.

use std::collections::BTreeMap;

use cstar_core::arith::{self, HjPair};
use cstar_core::classify::{self, RulingReading};
use cstar_core::dpd::{self, DpdPair};
use cstar_core::render;
use cstar_core::standard::{standardize_with, StandardizeOptions};
use cstar_core::zigzag;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Zigzag", module = "cstar", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyZigzag {
    inner: zigzag::Zigzag,
}

#[pymethods]
impl PyZigzag {
    /// Parse bracket notation: `[[0,0,-2]]` or `((0,0,(-2)_6,-3))`.
    #[new]
    fn new(notation: &str) -> PyResult<PyZigzag> {
        Ok(PyZigzag { inner: notation.parse().map_err(err)? })
    }

    #[staticmethod]
    fn linear(weights: Vec<i64>) -> PyZigzag {
        PyZigzag { inner: zigzag::Zigzag::linear(weights) }
    }

    #[staticmethod]
    fn circular(weights: Vec<i64>) -> PyZigzag {
        PyZigzag { inner: zigzag::Zigzag::circular(weights) }
    }

    #[getter]
    fn weights(&self) -> PyResult<Vec<i64>> {
        self.inner.int_weights().map_err(err)
    }

    #[getter]
    fn is_circular(&self) -> bool {
        self.inner.circular
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Zigzag('{}')", self.inner)
    }

    fn is_standard(&self) -> bool {
        self.inner.is_standard()
    }

    fn reverse(&self) -> PyZigzag {
        PyZigzag { inner: self.inner.reverse() }
    }

    fn determinant(&self) -> String {
        self.inner.determinant().to_string()
    }

    fn positive_eigenvalues(&self) -> usize {
        self.inner.positive_eigenvalues()
    }

    /// Standard form and the transformation log (as JSON).
    #[pyo3(signature = (semistandard = false))]
    fn standardize(&self, semistandard: bool) -> PyResult<(PyZigzag, String)> {
        let (s, log) = standardize_with(&self.inner, StandardizeOptions { semistandard }).map_err(err)?;
        Ok((PyZigzag { inner: s }, serde_json::to_string(&log).map_err(err)?))
    }

    fn smooth_boundary(&self) -> PyResult<bool> {
        Ok(classify::smooth_hyperbolic_zigzag_test(&self.inner).map_err(err)?.verdict)
    }

    fn smooth_boundary_by_contraction(&self) -> PyResult<bool> {
        Ok(classify::smooth_zigzag_contractibility_test(&self.inner).map_err(err)?.verdict)
    }

    fn to_dot(&self) -> String {
        render::zigzag_dot(&self.inner, "zigzag")
    }
}

#[pyclass(name = "DpdPair", module = "cstar", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyDpdPair {
    inner: DpdPair,
}

fn zz(z: zigzag::Zigzag) -> PyZigzag {
    PyZigzag { inner: z }
}

#[pymethods]
impl PyDpdPair {
    /// Coefficients are strings like `"-1/2"`, keyed by point label.
    #[new]
    #[pyo3(signature = (d_plus, d_minus, genus = 0, points_at_infinity = 1))]
    fn new(
        d_plus: BTreeMap<String, String>,
        d_minus: BTreeMap<String, String>,
        genus: u32,
        points_at_infinity: u32,
    ) -> PyResult<PyDpdPair> {
        let v = serde_json::json!({
            "base": {"genus": genus, "points_at_infinity": points_at_infinity},
            "d_plus": d_plus,
            "d_minus": d_minus,
        });
        PyDpdPair::from_json(&v.to_string())
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<PyDpdPair> {
        Ok(PyDpdPair { inner: DpdPair::from_json(s).map_err(err)? })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("DpdPair(D+ = {}, D- = {})", self.inner.d_plus, self.inner.d_minus)
    }

    fn points(&self) -> Vec<String> {
        self.inner.points()
    }

    fn swapped(&self) -> PyDpdPair {
        PyDpdPair { inner: self.inner.swapped() }
    }

    fn normalized(&self) -> PyResult<PyDpdPair> {
        Ok(PyDpdPair { inner: dpd::normalize_pair(&self.inner).map_err(err)? })
    }

    fn is_equivalent(&self, other: &PyDpdPair) -> bool {
        self.inner.is_equivalent(&other.inner)
    }

    /// The resolved boundary as a zigzag, or `None` when it is not a chain or cycle.
    fn boundary_zigzag(&self) -> PyResult<Option<PyZigzag>> {
        Ok(dpd::resolved_boundary_zigzag(&self.inner).map_err(err)?.map(zz))
    }

    fn boundary_dot(&self) -> PyResult<String> {
        Ok(render::to_dot(&dpd::resolved_boundary(&self.inner).map_err(err)?, "boundary"))
    }

    fn fiber(&self, point: &str) -> PyResult<PyZigzag> {
        Ok(zz(dpd::resolve_fiber(&self.inner, point).map_err(err)?.zigzag()))
    }

    /// Marked point (`"p0+"`, `"p0'"`, ...) to singularity type `(m, e)`.
    fn singularity_types(&self) -> PyResult<BTreeMap<String, (i64, i64)>> {
        Ok(dpd::singularity_types(&self.inner)
            .map_err(err)?
            .into_iter()
            .map(|(k, t)| (k.to_string(), (t.m, t.e)))
            .collect())
    }

    fn exceptional_count(&self) -> PyResult<usize> {
        dpd::exceptional_count(&self.inner).map_err(err)
    }

    fn is_gizatullin(&self) -> bool {
        classify::is_gizatullin(&self.inner)
    }

    fn is_toric(&self) -> PyResult<bool> {
        classify::is_toric_pair(&self.inner).map_err(err)
    }

    fn extended_graph_json(&self) -> PyResult<String> {
        serde_json::to_string(&classify::extended_graph(&self.inner).map_err(err)?).map_err(err)
    }

    fn picard_rank(&self) -> PyResult<u32> {
        classify::picard_rank_of_pair(&self.inner).map_err(err)
    }
}

#[pyfunction]
fn hj_expand(m: i64, e: i64) -> PyResult<Vec<i64>> {
    arith::hj_expand(m, e).map_err(err)
}

/// `[k1, ..., kn]` as `(numerator, denominator)`.
#[pyfunction]
fn cf_eval(ks: Vec<i64>) -> PyResult<(i64, i64)> {
    let r = arith::cf_eval_int(&ks).map_err(err)?;
    Ok((r.numer_i64().map_err(err)?, r.denom_i64().map_err(err)?))
}

/// `(m, e')` with `e e' = 1 mod m`.
#[pyfunction]
fn hj_dual(m: i64, e: i64) -> PyResult<(i64, i64)> {
    let d = HjPair::new(m, e).map_err(err)?.dual();
    Ok((d.m, d.e))
}

#[pyfunction]
fn standardize(notation: &str) -> PyResult<String> {
    let z: zigzag::Zigzag = notation.parse().map_err(err)?;
    Ok(standardize_with(&z, StandardizeOptions::default()).map_err(err)?.0.to_string())
}

#[pyfunction]
#[pyo3(signature = (k, symmetric_ruling = false))]
fn dg_actions(k: u64, symmetric_ruling: bool) -> Vec<PyDpdPair> {
    let reading = if symmetric_ruling { RulingReading::Symmetric } else { RulingReading::Verbatim };
    classify::dg_actions(k, reading).into_iter().map(|a| PyDpdPair { inner: a.pair }).collect()
}

/// Pair whose standardized boundary is `[[0,0,w2,...,wn]]`.
#[pyfunction]
fn toric_pair(tail: Vec<i64>) -> PyResult<PyDpdPair> {
    Ok(PyDpdPair { inner: classify::standard_zigzag_of_toric(&tail).map_err(err)? })
}

/// Run the command-line front end; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
#[pyo3(signature = (args, stdin = ""))]
fn run_cli(args: Vec<String>, stdin: &str) -> (i32, String, String) {
    let mut argv = vec!["cstar".to_string()];
    argv.extend(args);
    let (mut out, mut errs) = (Vec::new(), Vec::new());
    let code = cstar_core::cli::run(argv, &mut stdin.as_bytes(), &mut out, &mut errs);
    (
        code,
        String::from_utf8_lossy(&out).into_owned(),
        String::from_utf8_lossy(&errs).into_owned(),
    )
}

#[pymodule]
fn cstar(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyZigzag>()?;
    m.add_class::<PyDpdPair>()?;
    m.add_function(wrap_pyfunction!(hj_expand, m)?)?;
    m.add_function(wrap_pyfunction!(cf_eval, m)?)?;
    m.add_function(wrap_pyfunction!(hj_dual, m)?)?;
    m.add_function(wrap_pyfunction!(standardize, m)?)?;
    m.add_function(wrap_pyfunction!(dg_actions, m)?)?;
    m.add_function(wrap_pyfunction!(toric_pair, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
