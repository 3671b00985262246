//! Python bindings for `castelbound`.
//!
//! Rationals cross the boundary as `fractions.Fraction`; quadratic surds as
//! their canonical `p+q*sqrt(m)` string. Structured results (certificates,
//! constant reports, wall lists) arrive as plain dicts built from the same
//! JSON the CLI prints.

use std::collections::BTreeMap;

use castelbound::certifier::{self, Certifier};
use castelbound::constants::{self, Solver};
use castelbound::gvseries::{self, GVTable, PTTable, QWindow};
use castelbound::targets::{ScriptChoice, TargetThreefold};
use castelbound::tiltwalls::{self, ChernH};
use castelbound::{bounds, Error, Rat};
use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(castelbound_py, CastelboundError, PyValueError);

fn err(e: Error) -> PyErr {
    CastelboundError::new_err(format!("{}: {}", e.kind(), e))
}

fn fraction<'py>(py: Python<'py>, r: &Rat) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((r.to_string(),))
}

fn to_rat(v: &Bound<'_, PyAny>) -> PyResult<Rat> {
    v.str()?.to_str()?.parse::<Rat>().map_err(err)
}

fn to_big(v: &Bound<'_, PyAny>) -> PyResult<BigInt> {
    v.str()?.to_str()?.parse::<BigInt>().map_err(|_| PyValueError::new_err("expected an integer"))
}

fn py_int<'py>(py: Python<'py>, v: &BigInt) -> PyResult<Bound<'py, PyAny>> {
    py.import("builtins")?.getattr("int")?.call1((v.to_string(),))
}

fn json<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn script(s: &str) -> PyResult<ScriptChoice> {
    s.parse().map_err(err)
}

/// Truncated Chern character `(ch0, ch1, ch2, ch3)` in powers of H.
#[pyclass(name = "ChernH", frozen)]
struct PyChernH {
    inner: ChernH,
}

#[pymethods]
impl PyChernH {
    #[new]
    #[pyo3(signature = (c0, c1, c2, c3=None))]
    fn new(c0: &Bound<'_, PyAny>, c1: &Bound<'_, PyAny>, c2: &Bound<'_, PyAny>, c3: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let (c0, c1, c2) = (to_rat(c0)?, to_rat(c1)?, to_rat(c2)?);
        let inner = match c3 {
            Some(c3) => ChernH::new(c0, c1, c2, to_rat(c3)?),
            None => ChernH::truncated(c0, c1, c2),
        };
        Ok(PyChernH { inner })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyChernH { inner: ChernH::parse(text).map_err(err)? })
    }

    /// Ideal sheaf class of a degree-d genus-g curve in P^3.
    #[staticmethod]
    fn ideal_p3(d: i64, g: i64) -> Self {
        PyChernH { inner: tiltwalls::ideal_class_p3(d, g) }
    }

    /// `ch(O(-k))`.
    #[staticmethod]
    fn line_bundle(k: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyChernH { inner: ChernH::line_bundle(&to_rat(k)?) })
    }

    fn components<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let c = &self.inner;
        let mut out = vec![fraction(py, &c.c0)?, fraction(py, &c.c1)?, fraction(py, &c.c2)?];
        if c.c3_known {
            out.push(fraction(py, &c.c3)?);
        }
        Ok(out)
    }

    fn twist(&self, b: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyChernH { inner: tiltwalls::twist(&self.inner, &to_rat(b)?) })
    }

    fn discriminant<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &tiltwalls::discriminant(&self.inner))
    }

    /// Numerical wall against another class, as a dict, or None.
    fn wall<'py>(&self, py: Python<'py>, other: &PyChernH) -> PyResult<Bound<'py, PyAny>> {
        let w = tiltwalls::numerical_wall(&self.inner, &other.inner).map_err(err)?;
        json(py, &w)
    }

    fn __repr__(&self) -> String {
        let c = &self.inner;
        if c.c3_known {
            format!("ChernH({}, {}, {}, {})", c.c0, c.c1, c.c2, c.c3)
        } else {
            format!("ChernH({}, {}, {})", c.c0, c.c1, c.c2)
        }
    }

    fn __eq__(&self, other: &PyChernH) -> bool {
        self.inner == other.inner
    }
}

/// A target threefold, built in or loaded from a TOML/JSON path.
#[pyclass(name = "Target", frozen)]
struct PyTarget {
    inner: TargetThreefold,
}

#[pymethods]
impl PyTarget {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(PyTarget { inner: TargetThreefold::resolve(spec).map_err(err)? })
    }

    #[staticmethod]
    fn builtins() -> Vec<&'static str> {
        castelbound::targets::builtin_names()
    }

    #[getter]
    fn name(&self) -> &str {
        &self.inner.name
    }

    #[getter]
    fn n(&self) -> i64 {
        self.inner.n
    }

    #[getter]
    fn d1(&self) -> i64 {
        self.inner.d1
    }

    #[pyo3(signature = (d, script_name="paper"))]
    fn certify<'py>(&self, py: Python<'py>, d: i64, script_name: &str) -> PyResult<Bound<'py, PyAny>> {
        json(py, &certifier::certify(&self.inner, d, script(script_name)?).map_err(err)?)
    }

    /// Certified bounds for `d = 1..=D1`, in order.
    #[pyo3(signature = (script_name="paper"))]
    fn certify_table(&self, script_name: &str) -> PyResult<Vec<i64>> {
        let table = Certifier::new(&self.inner, script(script_name)?).table().map_err(err)?;
        Ok(table.iter().map(|c| c.bound_i64()).collect())
    }

    #[pyo3(signature = (d, script_name="paper"))]
    fn explain(&self, d: i64, script_name: &str) -> PyResult<String> {
        Ok(certifier::explain(&certifier::certify(&self.inner, d, script(script_name)?).map_err(err)?))
    }

    fn optimal_bound<'py>(&self, py: Python<'py>, d: i64) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &bounds::optimal_bound(&self.inner, d).map_err(err)?)
    }

    /// N2, N3, N4 and N_H under the default divisor map.
    fn theorem_chain<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let pol = tiltwalls::Polarization::new(self.inner.n, self.inner.s, self.inner.m_h, &self.inner.name).map_err(err)?;
        json(py, &constants::solve_theorem_chain(&pol, None).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("Target({:?}, n={}, D1={})", self.inner.name, self.inner.n, self.inner.d1)
    }
}

#[pyfunction]
fn epsilon<'py>(py: Python<'py>, d: &Bound<'py, PyAny>, n: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &bounds::epsilon(to_big(d)?, to_big(n)?))
}

#[pyfunction]
fn planar_bound(d: i64) -> i64 {
    bounds::planar_bound(d)
}

#[pyfunction]
fn surface_bound<'py>(py: Python<'py>, d: &Bound<'py, PyAny>, n: i64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &bounds::surface_bound(to_big(d)?, n))
}

#[pyfunction]
fn bmt_bound<'py>(py: Python<'py>, d: &Bound<'py, PyAny>, b0: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &bounds::bmt_bound(to_big(d)?, &to_rat(b0)?).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (d, n, m=1, s=1))]
fn asymptotic_bound<'py>(py: Python<'py>, d: &Bound<'py, PyAny>, n: i64, m: i64, s: i64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &bounds::asymptotic_main_bound(to_big(d)?, n, m, s))
}

#[pyfunction]
fn conjecture_bound<'py>(py: Python<'py>, d: &Bound<'py, PyAny>, n: i64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &bounds::castelnuovo_conjecture_bound(to_big(d)?, n))
}

#[pyfunction]
fn cy4_bound<'py>(py: Python<'py>, d: &Bound<'py, PyAny>, n: i64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &bounds::cy4_ch3_bound(to_big(d)?, n))
}

/// `b_d` as a surd string.
#[pyfunction]
fn b_d(d: i64, n: i64) -> String {
    tiltwalls::b_d(d, n).to_string()
}

#[pyfunction]
fn k_max(d: i64, n: i64) -> i64 {
    tiltwalls::k_max(d, n)
}

#[pyfunction]
fn max_admissible_d1(d: i64, n: i64, k: i64) -> i64 {
    tiltwalls::max_admissible_d1(d, n, k)
}

#[pyfunction]
fn solve_n0<'py>(py: Python<'py>, n: i64) -> PyResult<Bound<'py, PyAny>> {
    json(py, &Solver::new().n0(n).map_err(err)?)
}

#[pyfunction]
fn solve_n1<'py>(py: Python<'py>, n: i64, l: i64) -> PyResult<Bound<'py, PyAny>> {
    json(py, &Solver::new().n1(n, l).map_err(err)?)
}

#[pyfunction]
fn solve_n_nl<'py>(py: Python<'py>, n: i64, l: i64) -> PyResult<Bound<'py, PyAny>> {
    json(py, &Solver::new().n_nl(n, l).map_err(err)?)
}

#[pyfunction]
fn solve_no_wall<'py>(py: Python<'py>, n: i64, l: i64) -> PyResult<Bound<'py, PyAny>> {
    json(py, &constants::solve_no_wall(n, l).map_err(err)?)
}

/// `{exponent: Fraction}` for the genus-g, r-fold cover block.
#[pyfunction]
fn g_block<'py>(py: Python<'py>, g: i64, r: i64, lo: i64, hi: i64) -> PyResult<Bound<'py, PyDict>> {
    let q = gvseries::g_block(g, r, QWindow::new(lo, hi).map_err(err)?).map_err(err)?;
    let out = PyDict::new(py);
    for e in lo..=hi {
        let c = q.coeff(e);
        if !c.is_zero() {
            out.set_item(e, fraction(py, &c)?)?;
        }
    }
    Ok(out)
}

/// `{(g, d): int}` to `{(s, d): Fraction}` on the window `lo..=hi`.
#[pyfunction]
#[pyo3(signature = (gv, lo, hi, d_max=None))]
fn pt_from_gv<'py>(py: Python<'py>, gv: BTreeMap<(i64, i64), Bound<'py, PyAny>>, lo: i64, hi: i64, d_max: Option<i64>) -> PyResult<Bound<'py, PyDict>> {
    let mut entries = BTreeMap::new();
    for (k, v) in &gv {
        entries.insert(*k, to_big(v)?);
    }
    let table = GVTable::from_entries(entries, d_max).map_err(err)?;
    let pt = gvseries::pt_from_gv(&table, QWindow::new(lo, hi).map_err(err)?);
    let out = PyDict::new(py);
    for (k, v) in &pt.entries {
        out.set_item(*k, fraction(py, v)?)?;
    }
    Ok(out)
}

/// Inverse of `pt_from_gv`; raises when the window is too narrow or the series is inconsistent.
#[pyfunction]
#[pyo3(signature = (pt, lo, hi, d_max=None))]
fn gv_from_pt<'py>(py: Python<'py>, pt: BTreeMap<(i64, i64), Bound<'py, PyAny>>, lo: i64, hi: i64, d_max: Option<i64>) -> PyResult<Bound<'py, PyDict>> {
    let window = QWindow::new(lo, hi).map_err(err)?;
    let mut entries = BTreeMap::new();
    for (k, v) in &pt {
        let r = to_rat(v)?;
        if window.contains(k.0) && !r.is_zero() {
            entries.insert(*k, r);
        }
    }
    let d_max = d_max.unwrap_or_else(|| pt.keys().map(|k| k.1).max().unwrap_or(0));
    let gv = gvseries::gv_from_pt(&PTTable { entries, window, d_max, clipped: false }).map_err(err)?;
    let out = PyDict::new(py);
    for e in gv.list() {
        out.set_item((e.g, e.d), py_int(py, &e.value)?)?;
    }
    Ok(out)
}

#[pyfunction]
fn partition_check<'py>(py: Python<'py>, n: i64, big_n: i64, x: i64) -> PyResult<Bound<'py, PyAny>> {
    json(py, &gvseries::partition_check(n, big_n, x).map_err(err)?)
}

#[pyfunction]
fn gv_vanish_inequality(n: i64, m: i64) -> String {
    constants::gv_vanish_inequality(n, m)
}

#[pymodule]
fn castelbound_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CastelboundError", m.py().get_type::<CastelboundError>())?;
    m.add_class::<PyChernH>()?;
    m.add_class::<PyTarget>()?;
    m.add_function(wrap_pyfunction!(epsilon, m)?)?;
    m.add_function(wrap_pyfunction!(planar_bound, m)?)?;
    m.add_function(wrap_pyfunction!(surface_bound, m)?)?;
    m.add_function(wrap_pyfunction!(bmt_bound, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_bound, m)?)?;
    m.add_function(wrap_pyfunction!(conjecture_bound, m)?)?;
    m.add_function(wrap_pyfunction!(cy4_bound, m)?)?;
    m.add_function(wrap_pyfunction!(b_d, m)?)?;
    m.add_function(wrap_pyfunction!(k_max, m)?)?;
    m.add_function(wrap_pyfunction!(max_admissible_d1, m)?)?;
    m.add_function(wrap_pyfunction!(solve_n0, m)?)?;
    m.add_function(wrap_pyfunction!(solve_n1, m)?)?;
    m.add_function(wrap_pyfunction!(solve_n_nl, m)?)?;
    m.add_function(wrap_pyfunction!(solve_no_wall, m)?)?;
    m.add_function(wrap_pyfunction!(g_block, m)?)?;
    m.add_function(wrap_pyfunction!(pt_from_gv, m)?)?;
    m.add_function(wrap_pyfunction!(gv_from_pt, m)?)?;
    m.add_function(wrap_pyfunction!(partition_check, m)?)?;
    m.add_function(wrap_pyfunction!(gv_vanish_inequality, m)?)?;
    Ok(())
}
