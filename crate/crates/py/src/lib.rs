//! Python bindings. Systems and classes are wrapped as classes; check reports
//! come back as plain dicts and lists, fractions as `fractions.Fraction`.

use std::collections::BTreeSet;

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyModule;
use serde::Serialize;

use covers::gensearch::{self, SearchSpec};
use covers::identities::{self, DEFAULT_TOLERANCE};
use covers::{localglobal, unitfrac, CoverError, Fraction, Limits};

create_exception!(pycovers, CoverSystemError, PyValueError);

fn err(e: CoverError) -> PyErr {
    CoverSystemError::new_err(e.to_string())
}

fn limits(cap: Option<u64>) -> Limits {
    match cap {
        Some(table) => Limits {
            table,
            ..Limits::default()
        },
        None => Limits::default(),
    }
}

/// Round-trips a serializable report through `json.loads`.
fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn fraction(py: Python<'_>, f: &Fraction) -> PyResult<Py<PyAny>> {
    Ok(py
        .import("fractions")?
        .getattr("Fraction")?
        .call1((f.to_string(),))?
        .unbind())
}

#[pyclass(name = "ResidueClass", frozen, eq, hash, from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct PyResidueClass(covers::ResidueClass);

#[pymethods]
impl PyResidueClass {
    #[new]
    fn new(residue: i64, modulus: u64) -> PyResult<Self> {
        covers::ResidueClass::new(residue, modulus).map(Self).map_err(err)
    }

    #[getter]
    fn residue(&self) -> u64 {
        self.0.residue()
    }

    #[getter]
    fn modulus(&self) -> u64 {
        self.0.modulus()
    }

    fn __contains__(&self, x: i64) -> bool {
        self.0.contains(x)
    }

    fn __repr__(&self) -> String {
        format!("ResidueClass({}, {})", self.0.residue(), self.0.modulus())
    }
}

#[pyclass(name = "CoverSystem", eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyCoverSystem(covers::CoverSystem);

#[pymethods]
impl PyCoverSystem {
    /// `CoverSystem([(a, n), ...])`.
    #[new]
    #[pyo3(signature = (pairs = Vec::new()))]
    fn new(pairs: Vec<(i64, u64)>) -> PyResult<Self> {
        covers::CoverSystem::from_pairs(&pairs).map(Self).map_err(err)
    }

    /// Parses the `a mod n` line format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        covers::parse_system(text).map(Self).map_err(err)
    }

    /// `{0(2), 0(3), 1(4), 5(6), 7(12)}`.
    #[staticmethod]
    fn erdos() -> Self {
        Self(gensearch::erdos_example())
    }

    #[staticmethod]
    fn random(k: usize, max_modulus: u64, seed: u64) -> PyResult<Self> {
        gensearch::random_system(k, max_modulus, seed, &Limits::default())
            .map(Self)
            .map_err(err)
    }

    fn to_text(&self) -> String {
        covers::write_system(&self.0)
    }

    fn classes(&self) -> Vec<PyResidueClass> {
        self.0.classes().iter().copied().map(PyResidueClass).collect()
    }

    fn moduli(&self) -> Vec<u64> {
        self.0.moduli()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("CoverSystem({})", self.0)
    }

    /// Splits class `index` (1-based) into `p` classes modulo `p * n`.
    fn split(&self, index: usize, p: u64) -> PyResult<Self> {
        gensearch::split_class(&self.0, index, p).map(Self).map_err(err)
    }

    fn covering_count(&self, x: i64) -> u32 {
        self.0.covering_count(x)
    }

    #[pyo3(signature = (cap = None))]
    fn covering_table(&self, cap: Option<u64>) -> PyResult<Vec<u32>> {
        Ok(self.0.tabulate(&limits(cap)).map_err(err)?.into_values())
    }

    fn lcm(&self) -> PyResult<u64> {
        Ok(self.0.tabulate(&Limits::default()).map_err(err)?.lcm())
    }

    fn multiplicity(&self) -> PyResult<u32> {
        self.0.covering_multiplicity().map_err(err)
    }

    fn minimal_period(&self) -> PyResult<u64> {
        self.0.minimal_period().map_err(err)
    }

    fn is_m_cover(&self, m: u32) -> PyResult<bool> {
        self.0.is_m_cover(m).map_err(err)
    }

    fn irredundant_indices(&self, m: u32) -> PyResult<Vec<usize>> {
        self.0.irredundant_indices(m).map_err(err)
    }

    #[pyo3(signature = (m = None, cap = None))]
    fn report(&self, py: Python<'_>, m: Option<u32>, cap: Option<u64>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.0.report(m, &limits(cap)).map_err(err)?)
    }
}

/// Distinct subset sums of `1/n` over `moduli`, ascending.
#[pyfunction]
fn subset_sum_set(py: Python<'_>, moduli: Vec<u64>) -> PyResult<Vec<Py<PyAny>>> {
    unitfrac::subset_sum_set(&moduli, &Limits::default())
        .map_err(err)?
        .iter()
        .map(|f| fraction(py, f))
        .collect()
}

#[pyfunction]
fn subset_sum_profile(py: Python<'_>, system: &PyCoverSystem, t: usize) -> PyResult<Py<PyAny>> {
    to_py(
        py,
        &unitfrac::SubsetSumProfile::build(&system.0, t, &Limits::default()).map_err(err)?,
    )
}

#[pyfunction]
fn theorem1_check(py: Python<'_>, system: &PyCoverSystem, m: u32, t: usize) -> PyResult<Py<PyAny>> {
    to_py(
        py,
        &unitfrac::theorem1_check(&system.0, m, t, &Limits::default()).map_err(err)?,
    )
}

#[pyfunction]
#[pyo3(signature = (system, m, t = None))]
fn exact_cover_bound_check(py: Python<'_>, system: &PyCoverSystem, m: u32, t: Option<usize>) -> PyResult<Py<PyAny>> {
    to_py(
        py,
        &unitfrac::exact_cover_bound_check(&system.0, m, t, &Limits::default()).map_err(err)?,
    )
}

#[pyfunction]
#[pyo3(signature = (system, excluded, period = None))]
fn corollary1_check(
    py: Python<'_>,
    system: &PyCoverSystem,
    excluded: BTreeSet<i64>,
    period: Option<u64>,
) -> PyResult<Py<PyAny>> {
    to_py(
        py,
        &unitfrac::corollary1_check(&system.0, &excluded, period, &Limits::default()).map_err(err)?,
    )
}

#[pyfunction]
#[pyo3(signature = (system, m, t, z, tol = DEFAULT_TOLERANCE))]
fn lemma3_check(py: Python<'_>, system: &PyCoverSystem, m: u32, t: usize, z: i64, tol: f64) -> PyResult<Py<PyAny>> {
    to_py(
        py,
        &identities::lemma3_check(&system.0, m, t, z, tol, &Limits::default()).map_err(err)?,
    )
}

#[pyfunction]
#[pyo3(signature = (system, m, t, mults, tol = DEFAULT_TOLERANCE))]
fn lemma2_constancy_check(
    py: Python<'_>,
    system: &PyCoverSystem,
    m: u32,
    t: usize,
    mults: Vec<u64>,
    tol: f64,
) -> PyResult<Py<PyAny>> {
    to_py(
        py,
        &identities::lemma2_constancy_check(&system.0, m, t, &mults, tol, &Limits::default()).map_err(err)?,
    )
}

/// `f` is a list of `(exponents, coefficient)` terms.
#[pyfunction]
#[pyo3(signature = (system, mults, f, z, tol = DEFAULT_TOLERANCE))]
fn lemma1_check(
    py: Python<'_>,
    system: &PyCoverSystem,
    mults: Vec<i64>,
    f: Vec<(Vec<u32>, Complex64)>,
    z: i64,
    tol: f64,
) -> PyResult<Py<PyAny>> {
    let mut poly = identities::SparsePolynomial::new(system.0.len());
    for (exponents, c) in f {
        poly.add_term(exponents, c).map_err(err)?;
    }
    to_py(
        py,
        &identities::lemma1_check(&system.0, &mults, &poly, z, tol, &Limits::default()).map_err(err)?,
    )
}

#[pyfunction]
#[pyo3(signature = (system, t, samples = None, tol = DEFAULT_TOLERANCE, require_period = true))]
fn product_identity_check(
    py: Python<'_>,
    system: &PyCoverSystem,
    t: usize,
    samples: Option<Vec<Complex64>>,
    tol: f64,
    require_period: bool,
) -> PyResult<Py<PyAny>> {
    let samples = samples.unwrap_or_else(identities::default_samples);
    to_py(
        py,
        &identities::product_identity_check(&system.0, t, &samples, tol, require_period, &Limits::default())
            .map_err(err)?,
    )
}

#[pyfunction]
fn average_equality_check(py: Python<'_>, system: &PyCoverSystem) -> PyResult<Py<PyAny>> {
    to_py(
        py,
        &identities::average_equality_check(&system.0, &Limits::default()).map_err(err)?,
    )
}

#[pyfunction]
#[pyo3(signature = (system, m, x0 = 0, exact = false))]
fn check_local_global(py: Python<'_>, system: &PyCoverSystem, m: u32, x0: i64, exact: bool) -> PyResult<Py<PyAny>> {
    let verdict = if exact {
        localglobal::check_local_global_exact(&system.0, m, x0, &Limits::default())
    } else {
        localglobal::check_local_global_cover(&system.0, m, x0, &Limits::default())
    };
    to_py(py, &verdict.map_err(err)?)
}

/// Residue choices making `moduli` an m-cover (exact m-cover if `exact`).
#[pyfunction]
#[pyo3(signature = (moduli, m = 1, exact = false))]
fn find_covers(moduli: Vec<u64>, m: u32, exact: bool) -> PyResult<Vec<PyCoverSystem>> {
    let spec = SearchSpec {
        moduli,
        target_multiplicity: m,
        exact,
    };
    let found = gensearch::find_covers(&spec, &Limits::default()).map_err(err)?;
    Ok(found.iter().map(|r| PyCoverSystem(spec.system(r))).collect())
}

#[pymodule]
fn pycovers(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CoverSystemError", m.py().get_type::<CoverSystemError>())?;
    m.add_class::<PyResidueClass>()?;
    m.add_class::<PyCoverSystem>()?;
    m.add_function(wrap_pyfunction!(subset_sum_set, m)?)?;
    m.add_function(wrap_pyfunction!(subset_sum_profile, m)?)?;
    m.add_function(wrap_pyfunction!(theorem1_check, m)?)?;
    m.add_function(wrap_pyfunction!(exact_cover_bound_check, m)?)?;
    m.add_function(wrap_pyfunction!(corollary1_check, m)?)?;
    m.add_function(wrap_pyfunction!(lemma1_check, m)?)?;
    m.add_function(wrap_pyfunction!(lemma2_constancy_check, m)?)?;
    m.add_function(wrap_pyfunction!(lemma3_check, m)?)?;
    m.add_function(wrap_pyfunction!(product_identity_check, m)?)?;
    m.add_function(wrap_pyfunction!(average_equality_check, m)?)?;
    m.add_function(wrap_pyfunction!(check_local_global, m)?)?;
    m.add_function(wrap_pyfunction!(find_covers, m)?)?;
    Ok(())
}
