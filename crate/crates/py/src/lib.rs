//! Python bindings. Structured results cross the boundary as plain dicts
//! and lists, decoded from the same JSON the CLI prints.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde_json::Value;

use chirality_core::bigraph::{parse_pair, BigraphPair};
use chirality_core::catalog;
use chirality_core::obstructions::{run_all, Config};
use chirality_core::real::Precision;
use chirality_core::spectra::{branch_data, Designation, SpectralProfile};
use chirality_core::weedcert::{parse_vertex, EliminationCertificate, WeedOutcome, WeedSpec};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn config(precision: u32, tol: f64) -> Config {
    Config { precision: Precision::digits(precision), tol, ..Config::default() }
}

/// A principal graph pair.
#[pyclass(name = "GraphPair", frozen)]
struct PyGraphPair {
    inner: BigraphPair,
}

#[pymethods]
impl PyGraphPair {
    /// Parses two graph strings; a single string is used for both sides.
    #[new]
    #[pyo3(signature = (plus, minus=None))]
    fn new(plus: &str, minus: Option<&str>) -> PyResult<Self> {
        let inner = parse_pair(plus, minus.unwrap_or(plus)).map_err(err)?;
        Ok(PyGraphPair { inner })
    }

    #[getter]
    fn plus(&self) -> String {
        self.inner.strings().0
    }

    #[getter]
    fn minus(&self) -> String {
        self.inner.strings().1
    }

    #[getter]
    fn depth(&self) -> (usize, usize) {
        (self.inner.plus().max_depth(), self.inner.minus().max_depth())
    }

    /// Depths, adjacency and duality data.
    fn structure<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.to_json())
    }

    /// Index, dimensions, annular multiplicities and branch data.
    #[pyo3(signature = (precision=64, tol=1e-10, designate_p=None))]
    fn profile<'py>(&self, py: Python<'py>, precision: u32, tol: f64, designate_p: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
        let cfg = config(precision, tol);
        let prof = SpectralProfile::compute(&self.inner, cfg.precision, cfg.tol).map_err(err)?;
        let p = designate_p.map(parse_vertex).transpose().map_err(err)?;
        let branch = match branch_data(&self.inner, &prof, Designation { p, p_check: None }) {
            Ok(b) => b.to_json(cfg.digits),
            Err(e) => serde_json::json!({ "error": e.to_string() }),
        };
        let out = PyDict::new(py);
        out.set_item("profile", to_py(py, &prof.to_json(cfg.digits))?)?;
        out.set_item("branch", to_py(py, &branch)?)?;
        Ok(out.into_any())
    }

    /// Runs every obstruction and returns the report.
    #[pyo3(signature = (precision=64, tol=1e-10))]
    fn obstruct<'py>(&self, py: Python<'py>, precision: u32, tol: f64) -> PyResult<Bound<'py, PyAny>> {
        let cfg = config(precision, tol);
        let report = py.detach(|| run_all(&self.inner, &cfg));
        to_py(py, &report.to_json())
    }

    fn __repr__(&self) -> String {
        let (p, m) = self.inner.strings();
        format!("GraphPair({p:?}, {m:?})")
    }
}

/// A weed family to eliminate.
#[pyclass(name = "Weed", frozen)]
struct PyWeed {
    inner: WeedSpec,
}

#[pymethods]
impl PyWeed {
    /// Reads a weed description in the CLI's JSON format.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(PyWeed { inner: WeedSpec::from_json(spec).map_err(err)? })
    }

    /// One of the built-in weeds: `w`, `q1` or `q2`.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        let inner = match name {
            "w" => WeedSpec::w(),
            "q1" => WeedSpec::q1(),
            "q2" => WeedSpec::q2(),
            _ => return Err(PyValueError::new_err(format!("unknown built-in weed {name:?}"))),
        };
        Ok(PyWeed { inner })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    /// Tries to eliminate the family; the dict carries the verdict and,
    /// when eliminated, the certificate.
    fn eliminate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let outcome: WeedOutcome = py.detach(|| self.inner.eliminate()).map_err(err)?;
        to_py(py, &outcome.to_json())
    }

    fn __repr__(&self) -> String {
        format!("Weed({:?})", self.inner.name)
    }
}

/// Replays a certificate; raises `ValueError` with the reason if it fails.
#[pyfunction]
fn verify_certificate(text: &str) -> PyResult<String> {
    let v: Value = serde_json::from_str(text).map_err(err)?;
    let inner = v.get("certificate").cloned().unwrap_or(v);
    let cert = EliminationCertificate::from_json(&inner.to_string()).map_err(err)?;
    cert.verify().map_err(err)?;
    Ok(cert.conclusion)
}

/// Named pairs from the built-in catalog as `(name, plus, minus)`.
#[pyfunction]
fn named_pairs() -> Vec<(&'static str, &'static str, &'static str)> {
    catalog::all_named().iter().map(|n| (n.name, n.plus, n.minus)).collect()
}

#[pymodule]
fn chirality(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraphPair>()?;
    m.add_class::<PyWeed>()?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(named_pairs, m)?)?;
    Ok(())
}
