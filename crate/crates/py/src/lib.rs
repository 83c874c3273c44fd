//! Python bindings: targets, vanishing analysis, censuses, the genus-one
//! model, string/divisor reduction and root changes. Exact rationals are
//! returned as `fractions.Fraction`; structured reports as plain dicts.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use effint_core::constraints;
use effint_core::genus1::{build_genus1_with, genus1_invariant, GenusOneModel};
use effint_core::rational::{fmt_q, parse_q};
use effint_core::recursion::{self, Insertion, Reducer, Token};
use effint_core::target::{self as tgt, presets, Sector};
use effint_core::{DiscreteData, Error, TargetSpec, Q};

create_exception!(effint, EffintError, PyException);

fn err(e: Error) -> PyErr {
    EffintError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, x: &Q) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((fmt_q(x),))
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| EffintError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn normalization(text: Option<&str>) -> PyResult<Q> {
    match text {
        Some(s) => parse_q(s).map_err(err),
        None => Ok(effint_core::ring::default_normalization()),
    }
}

/// A punctured R-map target: ambient space, split bundle and root data.
#[pyclass(name = "Target", module = "effint", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyTarget {
    inner: TargetSpec,
}

#[pymethods]
impl PyTarget {
    #[staticmethod]
    fn preset(name: &str) -> PyResult<Self> {
        presets::by_name(name)
            .map(|inner| PyTarget { inner })
            .ok_or_else(|| EffintError::new_err(format!("unknown preset `{name}`; known: {}", presets::NAMES.join(", "))))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        TargetSpec::from_json_str(text).map(|inner| PyTarget { inner }).map_err(err)
    }

    /// `∏ P^{N_i}` with summands of the given multidegrees.
    #[staticmethod]
    fn complete_intersection(dims: Vec<u32>, degrees: Vec<Vec<i64>>) -> PyResult<Self> {
        TargetSpec::complete_intersection(&dims, degrees)
            .map(|inner| PyTarget { inner })
            .map_err(err)
    }

    #[staticmethod]
    fn presets() -> Vec<&'static str> {
        presets::NAMES.to_vec()
    }

    fn to_json(&self) -> String {
        self.inner.to_json_value().to_string()
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn curve_rank(&self) -> usize {
        self.inner.curve_rank()
    }

    #[getter]
    fn dim_infinity(&self) -> u32 {
        self.inner.infinity_data().dim
    }

    #[getter]
    fn rtilde<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.rtilde())
    }

    /// The genus-one model, with an optional λ-weight such as `"1/24"`.
    #[pyo3(signature = (normalization=None))]
    fn genus1(&self, normalization: Option<&str>) -> PyResult<PyGenusOne> {
        let w = self::normalization(normalization)?;
        build_genus1_with(&self.inner, w).map(|inner| PyGenusOne { inner }).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Target({:?}, rank={}, dim_infinity={})", self.inner.name, self.inner.rank(), self.inner.infinity_data().dim)
    }
}

/// Genus-one reduced and canonical cycles on `M̄_{1,1} × ∞_X`.
#[pyclass(name = "GenusOneModel", module = "effint", frozen)]
struct PyGenusOne {
    inner: GenusOneModel,
}

#[pymethods]
impl PyGenusOne {
    #[getter]
    fn red_cycle(&self) -> String {
        self.inner.red_cycle.to_string()
    }

    #[getter]
    fn vir_cycle(&self) -> String {
        self.inner.vir_cycle.to_string()
    }

    #[getter]
    fn psi_min(&self) -> String {
        self.inner.psi_min.to_string()
    }

    #[getter]
    fn dim_infinity(&self) -> u32 {
        self.inner.dim_infinity
    }

    fn consistency_holds(&self) -> bool {
        self.inner.consistency_holds()
    }

    /// `deg(ψ_min^k · ∏ α ∩ [R]^red)`; insertions are polynomials in
    /// `h`, `lambda` and `zeta`.
    #[pyo3(signature = (k=0, insertions=Vec::new()))]
    fn invariant<'py>(&self, py: Python<'py>, k: u32, insertions: Vec<String>) -> PyResult<Bound<'py, PyAny>> {
        let xs = insertions
            .iter()
            .map(|s| self.inner.parse_insertion(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        let v = genus1_invariant(&self.inner, k, &xs).map_err(err)?;
        fraction(py, &v)
    }
}

fn insertions_for(t: &TargetSpec, given: Option<Vec<String>>, n: usize) -> PyResult<Vec<Insertion>> {
    let given = given.unwrap_or_default();
    if given.len() > n {
        return Err(EffintError::new_err(format!("{} insertions for {n} markings", given.len())));
    }
    (0..n)
        .map(|i| match given.get(i) {
            Some(s) => Insertion::parse(t, s).map_err(err),
            None => Ok(Insertion::one(t)),
        })
        .collect()
}

/// String/divisor reducer with a memoizing ledger.
#[pyclass(name = "Reducer", module = "effint")]
struct PyReducer {
    inner: Reducer,
}

#[pymethods]
impl PyReducer {
    #[new]
    #[pyo3(signature = (target, normalization=None))]
    fn new(target: &PyTarget, normalization: Option<&str>) -> PyResult<Self> {
        let w = self::normalization(normalization)?;
        let inner = Reducer::new(target.inner.clone())
            .and_then(|r| r.with_normalization(w))
            .map_err(err)?;
        Ok(PyReducer { inner })
    }

    /// Reduces `ψ_min^k · ∏ ev*α_i` to basic invariants; returns a dict
    /// with `result`, `status` and `trace`.
    #[pyo3(signature = (genus, beta, contacts, insertions=None, k=0, t=None))]
    fn reduce<'py>(
        &mut self,
        py: Python<'py>,
        genus: u32,
        beta: Vec<i64>,
        contacts: Vec<i64>,
        insertions: Option<Vec<String>>,
        k: u32,
        t: Option<i64>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let target = self.inner.target().clone();
        let ins = insertions_for(&target, insertions, contacts.len())?;
        let token = Token::new(&target, genus, beta, t, contacts.into_iter().zip(ins).collect(), k).map_err(err)?;
        let res = self.inner.reduce(&token).map_err(err)?;
        to_py(py, &res)
    }

    /// The exact value when the reduction left no basic symbols.
    #[pyo3(signature = (genus, beta, contacts, insertions=None, k=0, t=None))]
    fn value<'py>(
        &mut self,
        py: Python<'py>,
        genus: u32,
        beta: Vec<i64>,
        contacts: Vec<i64>,
        insertions: Option<Vec<String>>,
        k: u32,
        t: Option<i64>,
    ) -> PyResult<Option<Bound<'py, PyAny>>> {
        let target = self.inner.target().clone();
        let ins = insertions_for(&target, insertions, contacts.len())?;
        let token = Token::new(&target, genus, beta, t, contacts.into_iter().zip(ins).collect(), k).map_err(err)?;
        let res = self.inner.reduce(&token).map_err(err)?;
        res.value().map(|v| fraction(py, &v)).transpose()
    }
}

/// Balancing, dimensions and the vanishing verdict.
#[pyfunction]
#[pyo3(signature = (target, genus, beta, contacts, k=0, insertions=None, t=None))]
fn analyze<'py>(
    py: Python<'py>,
    target: &PyTarget,
    genus: u32,
    beta: Vec<i64>,
    contacts: Vec<i64>,
    k: u32,
    insertions: Option<Vec<String>>,
    t: Option<i64>,
) -> PyResult<Bound<'py, PyAny>> {
    let data = DiscreteData::new(&target.inner, genus, beta, t, &contacts).map_err(err)?;
    let ins = insertions_for(&target.inner, insertions, contacts.len())?;
    let degs: Vec<u32> = ins.iter().map(|i| 2 * i.codim()).collect();
    to_py(py, &constraints::analyze(&data, &target.inner, &degs, k))
}

#[pyfunction]
fn census<'py>(py: Python<'py>, target: &PyTarget, genus: u32) -> PyResult<Bound<'py, PyAny>> {
    let rows = effint_core::enumerate_basic(&target.inner, genus).map_err(err)?;
    to_py(py, &rows)
}

#[pyfunction]
fn count_basic(target: &PyTarget, genus: u32) -> PyResult<usize> {
    effint_core::count_basic(&target.inner, genus).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (max_n=100, max_d=100))]
fn hypersurface_table<'py>(py: Python<'py>, max_n: i64, max_d: i64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &constraints::hypersurface_table(max_n, max_d))
}

#[pyfunction]
#[pyo3(signature = (max_n=60, min_r=2))]
fn ci_exception_scan<'py>(py: Python<'py>, max_n: i64, min_r: usize) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &constraints::ci_exception_scan(max_n, min_r))
}

fn sectors(contacts: &[i64], orders: Option<Vec<u64>>) -> PyResult<Vec<Sector>> {
    let orders = orders.unwrap_or_else(|| vec![1; contacts.len()]);
    if orders.len() != contacts.len() {
        return Err(EffintError::new_err("one order per contact is required"));
    }
    contacts
        .iter()
        .zip(&orders)
        .map(|(c, r)| Sector::new(*c, *r).map_err(err))
        .collect()
}

fn sector_tuples<'py>(py: Python<'py>, s: &[Sector]) -> PyResult<Vec<(i64, u64, Bound<'py, PyAny>)>> {
    s.iter().map(|x| Ok((x.contact, x.order, fraction(py, &x.age)?))).collect()
}

/// Lifts markings from `∞` to `∞^{1/ℓ}`; returns `(contact, order, age)`.
#[pyfunction]
#[pyo3(signature = (contacts, ell, orders=None))]
fn lift_contacts<'py>(py: Python<'py>, contacts: Vec<i64>, ell: u64, orders: Option<Vec<u64>>) -> PyResult<Vec<(i64, u64, Bound<'py, PyAny>)>> {
    let lifted = tgt::lift_contacts(&sectors(&contacts, orders)?, ell).map_err(err)?;
    sector_tuples(py, &lifted)
}

/// Pushes markings from `∞^{1/ℓ}` down to `∞` with the given base orders.
#[pyfunction]
fn push_contacts<'py>(py: Python<'py>, contacts: Vec<i64>, orders: Vec<u64>, base_orders: Vec<u64>, ell: u64) -> PyResult<Vec<(i64, u64, Bound<'py, PyAny>)>> {
    let pushed = tgt::push_contacts(&sectors(&contacts, Some(orders))?, &base_orders, ell).map_err(err)?;
    sector_tuples(py, &pushed)
}

#[pyfunction]
fn normalize_target<'py>(py: Python<'py>, r: u64, d: u64, ell: u64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &tgt::normalize_target(r, d, ell).map_err(err)?)
}

/// `ℓ^{1+k}`.
#[pyfunction]
fn root_factor<'py>(py: Python<'py>, k: u32, ell: u64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &recursion::root_factor(k, ell))
}

#[pyfunction]
#[pyo3(signature = (m, order=None))]
fn pushforward_min_check(m: usize, order: Option<usize>) -> PyResult<bool> {
    recursion::pushforward_min_check(m, order.unwrap_or_else(effint_core::default_order)).map_err(err)
}

#[pymodule]
fn effint(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("EffintError", m.py().get_type::<EffintError>())?;
    m.add_class::<PyTarget>()?;
    m.add_class::<PyGenusOne>()?;
    m.add_class::<PyReducer>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(count_basic, m)?)?;
    m.add_function(wrap_pyfunction!(hypersurface_table, m)?)?;
    m.add_function(wrap_pyfunction!(ci_exception_scan, m)?)?;
    m.add_function(wrap_pyfunction!(lift_contacts, m)?)?;
    m.add_function(wrap_pyfunction!(push_contacts, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_target, m)?)?;
    m.add_function(wrap_pyfunction!(root_factor, m)?)?;
    m.add_function(wrap_pyfunction!(pushforward_min_check, m)?)?;
    Ok(())
}
