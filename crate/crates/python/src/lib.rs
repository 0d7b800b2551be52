//! Python bindings: an `Algebra` handle plus a `run` entry point that
//! mirrors the command-line tool.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use quivrep::cli::{load_quiver, parse_module_arg};
use quivrep::homology::{euler_form, ext_dims, gldim};
use quivrep::quiver::DimVector;
use quivrep::rep::{hom_dim, Representation};
use quivrep::shod::{build_catalog, canonical_tilting, shod_report, ModuleCatalog};
use quivrep::variety::{certify_add_t, orbit_info, tangent_dim, Budget, CertifyOptions};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, v: &impl serde::Serialize) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(err)?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

#[pyclass(name = "Algebra", frozen)]
struct PyAlgebra {
    alg: Arc<quivrep::Algebra>,
    bound: Option<Vec<usize>>,
}

impl PyAlgebra {
    fn build_catalog(&self) -> quivrep::Result<ModuleCatalog> {
        let d = match &self.bound {
            Some(b) => DimVector(b.clone()),
            None => DimVector(vec![2; self.alg.num_vertices()]),
        };
        build_catalog(self.alg.clone(), &d)
    }

    fn catalog(&self) -> PyResult<ModuleCatalog> {
        self.build_catalog().map_err(err)
    }

    fn module(&self, spec: &str) -> PyResult<Representation> {
        parse_module_arg(&self.alg, spec, || Ok(canonical_tilting(&self.build_catalog()?)?.module)).map_err(err)
    }
}

#[pymethods]
impl PyAlgebra {
    /// `quiver` is a file path or a bundled fixture name (`a2`, `a3r`, `n4`).
    #[new]
    #[pyo3(signature = (quiver, bound = None))]
    fn new(quiver: &str, bound: Option<Vec<usize>>) -> PyResult<Self> {
        let q = load_quiver(quiver).map_err(err)?;
        let alg = quivrep::Algebra::new(q).map_err(err)?;
        Ok(PyAlgebra {
            alg: Arc::new(alg),
            bound,
        })
    }

    fn dim(&self) -> usize {
        self.alg.dim()
    }

    fn gldim(&self) -> Option<usize> {
        gldim(&self.alg).ok()
    }

    fn euler_matrix(&self) -> PyResult<Vec<Vec<i64>>> {
        Ok(euler_form(&self.alg).map_err(err)?.matrix)
    }

    fn dims(&self, m: &str) -> PyResult<Vec<usize>> {
        Ok(self.module(m)?.dims().0.clone())
    }

    fn hom_dim(&self, m: &str, n: &str) -> PyResult<usize> {
        hom_dim(&self.module(m)?, &self.module(n)?).map_err(err)
    }

    #[pyo3(signature = (m, n, max_degree = None))]
    fn ext_dims(&self, m: &str, n: &str, max_degree: Option<usize>) -> PyResult<Vec<usize>> {
        let top = max_degree.or_else(|| gldim(&self.alg).ok()).unwrap_or(self.alg.divergence_guard());
        ext_dims(&self.alg, &self.module(m)?, &self.module(n)?, top).map_err(err)
    }

    fn tangent_dim(&self, m: &str) -> PyResult<usize> {
        Ok(tangent_dim(&self.module(m)?))
    }

    fn orbit(&self, py: Python<'_>, m: &str) -> PyResult<Py<PyAny>> {
        to_py(py, &orbit_info(&self.alg, &self.module(m)?).map_err(err)?)
    }

    fn invariants(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &shod_report(&self.catalog()?))
    }

    #[pyo3(signature = (n = 1, budget = "default"))]
    fn certify(&self, py: Python<'_>, n: usize, budget: &str) -> PyResult<Py<PyAny>> {
        let budget = Budget::parse(budget).ok_or_else(|| err(format!("bad budget `{budget}`")))?;
        let c = self.catalog()?;
        let opts = CertifyOptions {
            budget,
            ..CertifyOptions::default()
        };
        let report = py.detach(|| certify_add_t(&c, n, &opts)).map_err(err)?;
        to_py(py, &report)
    }
}

/// Runs the command-line tool in-process; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run(args: Vec<String>) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut errs = Vec::new();
    let argv = std::iter::once("quivrep".to_string()).chain(args);
    let code = quivrep::cli::run(argv, &mut out, &mut errs);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&errs).into_owned())
}

#[pymodule]
fn pyquivrep(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
