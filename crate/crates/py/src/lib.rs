//! Python bindings: complexes, actions, and the main fine-graded computations.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use esr_core::catalog::{catalog, entry};
use esr_core::cohomology::{
    hochster_rhs_fine, isotypic_betti as core_isotypic_betti, reduced_betti,
};
use esr_core::complex::classify;
use esr_core::koszul::{local_cohomology_fine, Caps};
use esr_core::sr::{build_lsop as core_build_lsop, Lsop, QuotientEngine};
use esr_core::verify::{run_suite, Suite, VerifyOptions};
use esr_core::{validate_action, CyclicAction, Error, SimplicialComplex};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(format!("{}: {e}", e.code()))
}

/// A simplicial complex on vertices `1..=n`.
#[pyclass(name = "Complex", frozen, skip_from_py_object)]
struct PyComplex {
    inner: SimplicialComplex,
}

#[pymethods]
impl PyComplex {
    #[new]
    fn new(n: usize, facets: Vec<Vec<usize>>) -> PyResult<Self> {
        SimplicialComplex::from_one_based(n, &facets)
            .map(|inner| Self { inner })
            .map_err(py_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.d()
    }

    #[getter]
    fn facets(&self) -> Vec<Vec<usize>> {
        self.inner.facets_one_based()
    }

    fn f_vector(&self) -> Vec<u64> {
        self.inner.f_vector().0
    }

    fn h_vector(&self) -> Vec<i64> {
        self.inner.h_vector().0
    }

    /// Reduced Betti numbers starting at degree -1.
    fn reduced_betti(&self) -> Vec<usize> {
        reduced_betti(&self.inner).0
    }

    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let c = classify(&self.inner);
        let d = PyDict::new(py);
        d.set_item("pure", c.pure)?;
        d.set_item("connected", c.connected)?;
        d.set_item("cohen_macaulay", c.cohen_macaulay)?;
        d.set_item("buchsbaum", c.buchsbaum)?;
        d.set_item("homology_manifold", c.homology_manifold)?;
        d.set_item("orientable", c.orientable)?;
        d.set_item(
            "reduced_euler_characteristic",
            c.reduced_euler_characteristic,
        )?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!(
            "Complex(n={}, facets={:?})",
            self.inner.n(),
            self.inner.facets_one_based()
        )
    }
}

/// A permutation of prime order `p` given by 1-based images.
#[pyclass(name = "Action", frozen, skip_from_py_object)]
struct PyAction {
    inner: CyclicAction,
}

#[pymethods]
impl PyAction {
    #[new]
    #[pyo3(signature = (p, perm, trivial = false))]
    fn new(p: u32, perm: Vec<usize>, trivial: bool) -> PyResult<Self> {
        CyclicAction::from_one_based(p, &perm, trivial)
            .map(|inner| Self { inner })
            .map_err(py_err)
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn perm(&self) -> Vec<usize> {
        self.inner.images_one_based()
    }

    /// Automorphism, freeness and very-freeness on `complex`.
    fn validate<'py>(&self, py: Python<'py>, complex: &PyComplex) -> PyResult<Bound<'py, PyDict>> {
        let r = validate_action(&complex.inner, &self.inner).map_err(py_err)?;
        let d = PyDict::new(py);
        d.set_item("automorphism", r.automorphism)?;
        d.set_item("identity", r.identity)?;
        d.set_item("free", r.free)?;
        d.set_item("very_free", r.very_free)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!(
            "Action(p={}, perm={:?})",
            self.inner.p(),
            self.inner.images_one_based()
        )
    }
}

#[pyfunction]
fn catalog_names() -> Vec<&'static str> {
    catalog().iter().map(|e| e.name).collect()
}

#[pyfunction]
fn catalog_entry(name: &str) -> PyResult<(PyComplex, PyAction)> {
    let e =
        entry(name).ok_or_else(|| PyValueError::new_err(format!("no catalog entry `{name}`")))?;
    Ok((PyComplex { inner: e.complex }, PyAction { inner: e.action }))
}

/// `β_i^j` with rows from degree -1 and one column per character.
#[pyfunction]
fn isotypic_betti(complex: &PyComplex, action: &PyAction) -> PyResult<Vec<Vec<usize>>> {
    core_isotypic_betti(&complex.inner, &action.inner)
        .map(|b| b.table)
        .map_err(py_err)
}

/// Character dimensions of `H^i_m(k[K])` in internal degree `-j`.
#[pyfunction]
#[pyo3(signature = (complex, action, i, j, fast_mod = false))]
fn local_cohomology(
    complex: &PyComplex,
    action: &PyAction,
    i: i64,
    j: u32,
    fast_mod: bool,
) -> PyResult<Vec<usize>> {
    let caps = Caps {
        fast_mod,
        ..Caps::default()
    };
    local_cohomology_fine(&complex.inner, &action.inner, i, j, &caps).map_err(py_err)
}

/// The contrastar side of the refined Hochster formula.
#[pyfunction]
fn hochster_rhs(complex: &PyComplex, action: &PyAction, i: i64, j: u32) -> PyResult<Vec<usize>> {
    hochster_rhs_fine(&complex.inner, &action.inner, i, j, None).map_err(py_err)
}

/// An equivariant l.s.o.p. of character `m`, serialized as JSON.
#[pyfunction]
#[pyo3(signature = (complex, action, m, seed = 0))]
fn build_lsop(complex: &PyComplex, action: &PyAction, m: u32, seed: u64) -> PyResult<String> {
    let lsop = core_build_lsop(&complex.inner, &action.inner, m, seed).map_err(py_err)?;
    serde_json::to_string(&lsop).map_err(|e| py_err(e.into()))
}

fn lsop_for(
    complex: &PyComplex,
    action: &PyAction,
    m: u32,
    seed: u64,
    lsop: Option<&str>,
) -> PyResult<Lsop> {
    match lsop {
        Some(json) => serde_json::from_str(json).map_err(|e| py_err(e.into())),
        None => core_build_lsop(&complex.inner, &action.inner, m, seed).map_err(py_err),
    }
}

/// Fine Hilbert function of `k[K]/Θ`: one row per degree, one column per character.
#[pyfunction]
#[pyo3(signature = (complex, action, m, seed = 0, lsop = None))]
fn artinian(
    complex: &PyComplex,
    action: &PyAction,
    m: u32,
    seed: u64,
    lsop: Option<&str>,
) -> PyResult<Vec<Vec<i64>>> {
    let l = lsop_for(complex, action, m, seed, lsop)?;
    let engine = QuotientEngine::new(&complex.inner, Some(&action.inner), &l).map_err(py_err)?;
    engine.artinian().map(|t| t.dims).map_err(py_err)
}

/// `(Σ/ΘR, R/Σ)` fine tables and the character of the top piece of `R/Σ`
/// (`None` when the top piece is not 1-dimensional).
#[pyfunction]
#[pyo3(signature = (complex, action, m, seed = 0))]
#[allow(clippy::type_complexity)]
fn sigma(
    complex: &PyComplex,
    action: &PyAction,
    m: u32,
    seed: u64,
) -> PyResult<(Vec<Vec<i64>>, Vec<Vec<i64>>, Option<u32>)> {
    let l = lsop_for(complex, action, m, seed, None)?;
    let engine = QuotientEngine::new(&complex.inner, Some(&action.inner), &l).map_err(py_err)?;
    let t = engine.sigma().map_err(py_err)?;
    let socle = engine
        .pairing()
        .ok()
        .filter(|r| r.perfect)
        .map(|r| r.socle_character);
    Ok((t.sigma_over_theta.dims, t.quotient.dims, socle))
}

/// Runs a verification suite; returns the JSON report and the failure count.
#[pyfunction]
#[pyo3(signature = (suite = "all", name = None, seed = 0))]
fn verify(suite: &str, name: Option<&str>, seed: u64) -> PyResult<(String, usize)> {
    let suite: Suite = suite.parse().map_err(py_err)?;
    let entries = match name {
        Some(n) => {
            vec![entry(n).ok_or_else(|| PyValueError::new_err(format!("no catalog entry `{n}`")))?]
        }
        None => catalog(),
    };
    let opts = VerifyOptions {
        seed,
        ..VerifyOptions::default()
    };
    let report = run_suite(suite, &entries, &opts);
    let json = serde_json::to_string(&report).map_err(|e| py_err(e.into()))?;
    Ok((json, report.counts.fail))
}

#[pymodule]
fn esr(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyComplex>()?;
    m.add_class::<PyAction>()?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_entry, m)?)?;
    m.add_function(wrap_pyfunction!(isotypic_betti, m)?)?;
    m.add_function(wrap_pyfunction!(local_cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(hochster_rhs, m)?)?;
    m.add_function(wrap_pyfunction!(build_lsop, m)?)?;
    m.add_function(wrap_pyfunction!(artinian, m)?)?;
    m.add_function(wrap_pyfunction!(sigma, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
