//! Python bindings. Exact rationals cross the boundary as
//! `fractions.Fraction`; inputs may be `int`, `Fraction` or a `"p/q"` string.

use hodgebn_core::batch::{generate_table as core_generate_table, Grid, TableCache};
use hodgebn_core::brill_noether as bn;
use hodgebn_core::divisor_classes as dc;
use hodgebn_core::picard::{self, DownClass, UpClass};
use hodgebn_core::rational::{self, Q};
use hodgebn_core::teichmuller::{self as teich, AmpleVector, TeichCurve};
use hodgebn_core::test_families;
use hodgebn_core::{BNData, Error, VanishingSequence};
use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyTypeError, PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyFloat, PyString};

create_exception!(
    hodgebn,
    HodgebnError,
    PyException,
    "Base class for hodgebn errors."
);
create_exception!(
    hodgebn,
    UnsupportedError,
    HodgebnError,
    "Input outside the supported range."
);
create_exception!(
    hodgebn,
    SchemaError,
    HodgebnError,
    "Table cache does not match the schema."
);

fn err(e: Error) -> PyErr {
    match e {
        Error::Unsupported(_) => UnsupportedError::new_err(e.to_string()),
        Error::ZeroDenominator => PyZeroDivisionError::new_err(e.to_string()),
        Error::Schema(_) => SchemaError::new_err(e.to_string()),
        Error::SingularSystem | Error::Invariant(_) => HodgebnError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait OrPy<T> {
    fn py_err(self) -> PyResult<T>;
}

impl<T> OrPy<T> for hodgebn_core::Result<T> {
    fn py_err(self) -> PyResult<T> {
        self.map_err(err)
    }
}

fn to_q(obj: &Bound<'_, PyAny>) -> PyResult<Q> {
    if obj.is_instance_of::<PyFloat>() {
        return Err(PyTypeError::new_err(
            "floats are not exact; pass an int, Fraction or \"p/q\" string",
        ));
    }
    if let Ok(s) = obj.cast::<PyString>() {
        return rational::parse(s.to_str()?).py_err();
    }
    if let Ok(n) = obj.extract::<BigInt>() {
        return Ok(Q::from_integer(n));
    }
    obj.extract::<Q>()
        .map_err(|_| PyTypeError::new_err("expected an int, Fraction or \"p/q\" string"))
}

fn to_q_opt(obj: Option<&Bound<'_, PyAny>>) -> PyResult<Option<Q>> {
    obj.filter(|o| !o.is_none()).map(to_q).transpose()
}

fn datum(g: i64, d: i64, a: Vec<i64>) -> PyResult<BNData> {
    BNData::new(g, d, VanishingSequence::new(a).py_err()?).py_err()
}

fn json_to_py<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(value).map_err(|e| HodgebnError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (s,))
}

/// Divisor class on `PE^k_g` over `eta, lambda, delta_0, ..., delta_{g//2}`.
#[pyclass(name = "DivisorClass", module = "hodgebn", frozen, skip_from_py_object)]
pub struct PyDownClass(pub DownClass);

/// Divisor class on `PE^k_{g,1}` over `eta, lambda, psi, delta_0, ..., delta_{g-1}`.
#[pyclass(name = "PointedClass", module = "hodgebn", frozen, skip_from_py_object)]
pub struct PyUpClass(pub UpClass);

fn same_context(g1: i64, k1: i64, g2: i64, k2: i64) -> PyResult<()> {
    if g1 != g2 || k1 != k2 {
        return Err(err(Error::ContextMismatch { g1, k1, g2, k2 }));
    }
    Ok(())
}

#[pymethods]
impl PyDownClass {
    /// `coefficients` is `[eta, lambda, delta_0, ...]`.
    #[new]
    fn new(g: i64, k: i64, coefficients: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let coeffs = coefficients
            .iter()
            .map(to_q)
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Self(DownClass::from_coefficients(g, k, &coeffs).py_err()?))
    }

    #[getter]
    fn g(&self) -> i64 {
        self.0.g
    }

    #[getter]
    fn k(&self) -> i64 {
        self.0.k
    }

    #[getter]
    fn eta(&self) -> Q {
        self.0.eta.clone()
    }

    #[getter]
    fn lambda_(&self) -> Q {
        self.0.lambda.clone()
    }

    #[getter]
    fn delta(&self) -> Vec<Q> {
        self.0.delta.clone()
    }

    fn coefficients(&self) -> Vec<Q> {
        self.0.coefficients()
    }

    /// Representative with no `delta_1` term (genus 2 only).
    fn reduce_genus_two(&self) -> Self {
        Self(self.0.reduce_genus_two())
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(|e| HodgebnError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        serde_json::from_str(s)
            .map(Self)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// Equality in the Picard group, modulo the genus-2 relation.
    fn __eq__(&self, other: &Bound<'_, PyAny>) -> PyResult<bool> {
        let Ok(other) = other.cast::<PyDownClass>() else {
            return Ok(false);
        };
        let other = &other.get().0;
        if (self.0.g, self.0.k) != (other.g, other.k) {
            return Ok(false);
        }
        picard::classes_equal(&self.0, other).py_err()
    }

    fn __add__(&self, other: &PyDownClass) -> PyResult<Self> {
        same_context(self.0.g, self.0.k, other.0.g, other.0.k)?;
        Ok(Self(&self.0 + &other.0))
    }

    fn __sub__(&self, other: &PyDownClass) -> PyResult<Self> {
        same_context(self.0.g, self.0.k, other.0.g, other.0.k)?;
        Ok(Self(&self.0 - &other.0))
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn __mul__(&self, scalar: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self(&self.0 * &to_q(scalar)?))
    }

    fn __rmul__(&self, scalar: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__mul__(scalar)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("DivisorClass(g={}, k={}, {})", self.0.g, self.0.k, self.0)
    }
}

#[pymethods]
impl PyUpClass {
    /// `coefficients` is `[eta, lambda, psi, delta_0, ..., delta_{g-1}]`.
    #[new]
    fn new(g: i64, k: i64, coefficients: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let c = coefficients
            .iter()
            .map(to_q)
            .collect::<PyResult<Vec<_>>>()?;
        if g < 2 || c.len() != 3 + g as usize {
            return Err(PyValueError::new_err(format!(
                "expected {} coefficients",
                3 + g.max(0)
            )));
        }
        Ok(Self(UpClass {
            g,
            k,
            eta: c[0].clone(),
            lambda: c[1].clone(),
            psi: c[2].clone(),
            delta: c[3..].to_vec(),
        }))
    }

    #[getter]
    fn g(&self) -> i64 {
        self.0.g
    }

    #[getter]
    fn k(&self) -> i64 {
        self.0.k
    }

    #[getter]
    fn eta(&self) -> Q {
        self.0.eta.clone()
    }

    #[getter]
    fn lambda_(&self) -> Q {
        self.0.lambda.clone()
    }

    #[getter]
    fn psi(&self) -> Q {
        self.0.psi.clone()
    }

    #[getter]
    fn delta(&self) -> Vec<Q> {
        self.0.delta.clone()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(|e| HodgebnError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        serde_json::from_str(s)
            .map(Self)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __eq__(&self, other: &Bound<'_, PyAny>) -> bool {
        other.cast::<PyUpClass>().is_ok_and(|o| o.get().0 == self.0)
    }

    fn __add__(&self, other: &PyUpClass) -> PyResult<Self> {
        same_context(self.0.g, self.0.k, other.0.g, other.0.k)?;
        Ok(Self(&self.0 + &other.0))
    }

    fn __sub__(&self, other: &PyUpClass) -> PyResult<Self> {
        same_context(self.0.g, self.0.k, other.0.g, other.0.k)?;
        Ok(Self(&self.0 - &other.0))
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn __mul__(&self, scalar: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self(&self.0 * &to_q(scalar)?))
    }

    fn __rmul__(&self, scalar: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__mul__(scalar)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("PointedClass(g={}, k={}, {})", self.0.g, self.0.k, self.0)
    }
}

/// Adjusted Brill-Noether number; `r` defaults to `len(a) - 1`.
#[pyfunction]
#[pyo3(signature = (g, d, a, r = None))]
fn rho(g: i64, d: i64, a: Vec<i64>, r: Option<i64>) -> PyResult<i64> {
    let a = VanishingSequence::new(a).py_err()?;
    bn::rho(g, r.unwrap_or(a.r()), d, &a).py_err()
}

#[pyfunction]
fn derived_sequence(a: Vec<i64>, i: usize) -> PyResult<Option<Vec<i64>>> {
    let a = VanishingSequence::new(a).py_err()?;
    Ok(bn::derived_sequence(&a, i).py_err()?.map(Vec::from))
}

/// Number of pointed linear series with vanishing at least `a`.
#[pyfunction]
fn count_special(g: i64, d: i64, a: Vec<i64>) -> PyResult<BigInt> {
    bn::count_special(g, d, &VanishingSequence::new(a).py_err()?).py_err()
}

/// `(mu, nu)` for a `rho = -1` datum with `g >= 3`.
#[pyfunction]
fn mu_nu(g: i64, d: i64, a: Vec<i64>) -> PyResult<(Q, Q)> {
    bn::mu_nu(&datum(g, d, a)?).py_err()
}

/// Like `mu_nu`, and also `(0, 1)` for the genus-2 Weierstrass datum.
#[pyfunction]
fn cone_weights(g: i64, d: i64, a: Vec<i64>) -> PyResult<(Q, Q)> {
    bn::cone_weights(&datum(g, d, a)?).py_err()
}

/// Every `rho = -1` datum as `(g, r, d, a)` tuples.
#[pyfunction]
fn enumerate_divisorial(g: i64, r_max: i64, d_max: i64) -> Vec<(i64, i64, i64, Vec<i64>)> {
    bn::enumerate_divisorial(g, r_max, d_max)
        .into_iter()
        .map(|x| (x.g, x.r(), x.d, x.a.entries().to_vec()))
        .collect()
}

#[pyfunction]
fn weierstrass_k_class(g: i64, k: i64) -> PyResult<PyDownClass> {
    dc::weierstrass_k_class(g, k).py_err().map(PyDownClass)
}

/// Class of the Brill-Noether divisor along one route:
/// `"direct"`, `"pushforward"` or `"families"`.
#[pyfunction]
#[pyo3(signature = (g, k, d, a, route = "direct"))]
fn bn_k_class(g: i64, k: i64, d: i64, a: Vec<i64>, route: &str) -> PyResult<PyDownClass> {
    let x = datum(g, d, a)?;
    let class = match route {
        "direct" => dc::bn_k_class_direct(&x, k),
        "pushforward" => dc::bn_k_class_pushforward(&x, k),
        "families" => bn::cone_weights(&x).and_then(|(mu, nu)| {
            let n = Q::from_integer(bn::count_special(x.g, x.d, &x.a)?);
            test_families::solve_coefficients(x.g, k, &mu, &nu, &n)
        }),
        other => return Err(PyValueError::new_err(format!("unknown route {other:?}"))),
    };
    class.py_err().map(PyDownClass)
}

#[pyfunction]
fn incidence_class(g: i64, k: i64) -> PyResult<PyUpClass> {
    if g < 2 || k < 1 {
        return Err(PyValueError::new_err("need g >= 2 and k >= 1"));
    }
    Ok(PyUpClass(picard::incidence_class(g, k)))
}

#[pyfunction]
#[pyo3(signature = (g, d, a, k = 1))]
fn pointed_bn_class(g: i64, d: i64, a: Vec<i64>, k: i64) -> PyResult<PyUpClass> {
    dc::pointed_bn_class(&datum(g, d, a)?, k)
        .py_err()
        .map(PyUpClass)
}

/// `pi_*(c1 . c2)` down to `PE^k_g`.
#[pyfunction]
fn pushforward_product(c1: &PyUpClass, c2: &PyUpClass) -> PyResult<PyDownClass> {
    picard::pushforward_product(&c1.0, &c2.0)
        .py_err()
        .map(PyDownClass)
}

#[pyfunction]
fn classes_equal(c1: &PyDownClass, c2: &PyDownClass) -> PyResult<bool> {
    picard::classes_equal(&c1.0, &c2.0).py_err()
}

#[pyfunction]
fn stratum_h22() -> PyResult<PyDownClass> {
    dc::stratum_h22().py_err().map(PyDownClass)
}

/// Class solved from the test-family system for given `(mu, nu, n)`.
#[pyfunction]
fn solve_coefficients(
    g: i64,
    k: i64,
    mu: &Bound<'_, PyAny>,
    nu: &Bound<'_, PyAny>,
    n: &Bound<'_, PyAny>,
) -> PyResult<PyDownClass> {
    test_families::solve_coefficients(g, k, &to_q(mu)?, &to_q(nu)?, &to_q(n)?)
        .py_err()
        .map(PyDownClass)
}

/// Verification report as a dict (rationals as `"p/q"` strings).
#[pyfunction]
fn verify_dual_path<'py>(
    py: Python<'py>,
    g: i64,
    k: i64,
    d: i64,
    a: Vec<i64>,
) -> PyResult<Bound<'py, PyAny>> {
    json_to_py(py, &test_families::verify_dual_path(&datum(g, d, a)?, k))
}

fn curve(
    k: i64,
    g: i64,
    chi: &Bound<'_, PyAny>,
    lyapunov: Option<&Bound<'_, PyAny>>,
    c_sv: Option<&Bound<'_, PyAny>>,
) -> PyResult<TeichCurve> {
    TeichCurve::new(k, g, to_q(chi)?, to_q_opt(lyapunov)?, to_q_opt(c_sv)?).py_err()
}

/// Intersection numbers of a Teichmuller curve, as a dict of Fractions.
#[pyfunction]
#[pyo3(signature = (k, g, chi, L = None, c_sv = None))]
#[allow(non_snake_case)]
fn teich_intersections<'py>(
    py: Python<'py>,
    k: i64,
    g: i64,
    chi: &Bound<'py, PyAny>,
    L: Option<&Bound<'py, PyAny>>,
    c_sv: Option<&Bound<'py, PyAny>>,
) -> PyResult<Bound<'py, PyDict>> {
    let table = teich::intersections(&curve(k, g, chi, L, c_sv)?).py_err()?;
    let out = PyDict::new(py);
    let names: &[&str] = match table {
        teich::Intersections::Abelian(_) => &["lambda", "delta0", "psi", "eta", "H"],
        teich::Intersections::Quadratic(_) => &["lambda", "delta", "psi", "eta", "H"],
    };
    for (name, value) in names.iter().zip(table.values()) {
        out.set_item(name, value)?;
    }
    Ok(out)
}

fn ample(g: i64, values: Vec<Bound<'_, PyAny>>) -> PyResult<AmpleVector> {
    let v = values.iter().map(to_q).collect::<PyResult<Vec<_>>>()?;
    AmpleVector::from_list(g, &v).py_err()
}

/// Threshold `d` for one curve; `ample` is `[eta, lambda, psi, delta_0, ...]`.
#[pyfunction]
#[pyo3(signature = (k, g, ample_coefficients, L = None, c_sv = None))]
#[allow(non_snake_case)]
fn threshold_d(
    py: Python<'_>,
    k: i64,
    g: i64,
    ample_coefficients: Vec<Bound<'_, PyAny>>,
    L: Option<&Bound<'_, PyAny>>,
    c_sv: Option<&Bound<'_, PyAny>>,
) -> PyResult<Q> {
    let chi = (-1i64).into_pyobject(py)?.into_any();
    let c = curve(k, g, &chi, L, c_sv)?;
    teich::threshold_d(&c, &ample(g, ample_coefficients)?).py_err()
}

/// Infimum of the threshold over curves given as dicts with keys
/// `k`, `g`, `chi` and `L` or `c_sv`.
#[pyfunction]
fn infimum_threshold<'py>(
    py: Python<'py>,
    curves: Vec<Bound<'py, PyDict>>,
    ample_coefficients: Vec<Bound<'py, PyAny>>,
) -> PyResult<Bound<'py, PyAny>> {
    let parsed = curves
        .iter()
        .map(|d| {
            let get = |key: &str| d.get_item(key);
            let k: i64 = get("k")?
                .ok_or_else(|| PyValueError::new_err("curve needs k"))?
                .extract()?;
            let g: i64 = get("g")?
                .ok_or_else(|| PyValueError::new_err("curve needs g"))?
                .extract()?;
            let chi = get("chi")?.ok_or_else(|| PyValueError::new_err("curve needs chi"))?;
            curve(k, g, &chi, get("L")?.as_ref(), get("c_sv")?.as_ref())
        })
        .collect::<PyResult<Vec<_>>>()?;
    let g = parsed.first().map_or(0, |c| c.g);
    let summary = teich::infimum_threshold(&parsed, &ample(g, ample_coefficients)?).py_err()?;
    let out = json_to_py(py, &summary)?;
    out.set_item("infimum", summary.infimum)?;
    Ok(out)
}

/// Table of classes over a grid, as the cache JSON text.
#[pyfunction]
#[pyo3(signature = (g_range, k_range, d_max, r_max, jobs = 1))]
fn generate_table(
    g_range: (i64, i64),
    k_range: (i64, i64),
    d_max: i64,
    r_max: i64,
    jobs: usize,
) -> PyResult<String> {
    let grid = Grid {
        genus: g_range.0..=g_range.1,
        k: k_range.0..=k_range.1,
        d_max,
        r_max,
    };
    core_generate_table(&grid, jobs)
        .and_then(|t| t.to_json())
        .py_err()
}

/// Looks up one cell of a table produced by `generate_table`; `None` if absent.
#[pyfunction]
fn query_table<'py>(
    py: Python<'py>,
    table_json: &str,
    g: i64,
    k: i64,
    d: i64,
    a: Vec<i64>,
) -> PyResult<Option<Bound<'py, PyAny>>> {
    let table = TableCache::from_json(table_json).py_err()?;
    let a = VanishingSequence::new(a).py_err()?;
    table
        .query(g, k, d, &a)
        .map(|cell| json_to_py(py, cell))
        .transpose()
}

#[pymodule]
fn hodgebn(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("HodgebnError", py.get_type::<HodgebnError>())?;
    m.add("UnsupportedError", py.get_type::<UnsupportedError>())?;
    m.add("SchemaError", py.get_type::<SchemaError>())?;
    m.add_class::<PyDownClass>()?;
    m.add_class::<PyUpClass>()?;
    m.add_function(wrap_pyfunction!(rho, m)?)?;
    m.add_function(wrap_pyfunction!(derived_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(count_special, m)?)?;
    m.add_function(wrap_pyfunction!(mu_nu, m)?)?;
    m.add_function(wrap_pyfunction!(cone_weights, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_divisorial, m)?)?;
    m.add_function(wrap_pyfunction!(weierstrass_k_class, m)?)?;
    m.add_function(wrap_pyfunction!(bn_k_class, m)?)?;
    m.add_function(wrap_pyfunction!(incidence_class, m)?)?;
    m.add_function(wrap_pyfunction!(pointed_bn_class, m)?)?;
    m.add_function(wrap_pyfunction!(pushforward_product, m)?)?;
    m.add_function(wrap_pyfunction!(classes_equal, m)?)?;
    m.add_function(wrap_pyfunction!(stratum_h22, m)?)?;
    m.add_function(wrap_pyfunction!(solve_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(verify_dual_path, m)?)?;
    m.add_function(wrap_pyfunction!(teich_intersections, m)?)?;
    m.add_function(wrap_pyfunction!(threshold_d, m)?)?;
    m.add_function(wrap_pyfunction!(infimum_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(generate_table, m)?)?;
    m.add_function(wrap_pyfunction!(query_table, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use pyo3::types::PyModule;

    /// Runs `code` with the module bound to the name `hodgebn`.
    fn run(code: &std::ffi::CStr) {
        Python::initialize();
        Python::attach(|py| -> PyResult<()> {
            let m = PyModule::new(py, "hodgebn")?;
            hodgebn(&m)?;
            let locals = PyDict::new(py);
            locals.set_item("hodgebn", m)?;
            py.run(code, None, Some(&locals))
        })
        .unwrap_or_else(|e| panic!("{e}"));
    }

    #[test]
    fn counts_and_weights() {
        run(c"
from fractions import Fraction
assert hodgebn.count_special(3, 4, [0, 1, 3]) == 24
assert hodgebn.rho(2, 2, [0, 2]) == -1
assert hodgebn.mu_nu(3, 2, [0, 1]) == (Fraction(3, 2), Fraction(0))
assert hodgebn.derived_sequence([0, 1, 3], 1) is None
assert hodgebn.enumerate_divisorial(3, 1, 2) == [(3, 1, 2, [0, 1])]
try:
    hodgebn.cone_weights(2, 3, [1, 3])
    raise AssertionError('expected UnsupportedError')
except hodgebn.UnsupportedError:
    pass
");
    }

    #[test]
    fn classes() {
        run(c"
from fractions import Fraction
w = hodgebn.weierstrass_k_class(3, 1)
assert str(w) == '-24*eta + 68*lambda - 6*delta0 - 12*delta1'
assert w.coefficients() == [-24, 68, -6, -12]
assert w == hodgebn.bn_k_class(3, 1, 4, [0, 1, 3], route='families')
h = hodgebn.stratum_h22()
assert h == hodgebn.DivisorClass(2, 2, [-2, 2, 0, 2])
assert hodgebn.DivisorClass.from_json(h.to_json()) == h
pushed = hodgebn.pushforward_product(hodgebn.incidence_class(3, 1), hodgebn.pointed_bn_class(3, 4, [0, 1, 3]))
assert pushed == w
assert (w * Fraction(1, 2) + w * '1/2') == w
");
    }

    #[test]
    fn reports_and_teichmuller() {
        run(c"
from fractions import Fraction
r = hodgebn.verify_dual_path(3, 1, 2, [0, 1])
assert r['status'] == 'PASS'
t = hodgebn.teich_intersections(1, 2, -10, L=2)
assert t == {'lambda': 10, 'delta0': 105, 'psi': Fraction(5, 2), 'eta': 5, 'H': Fraction(-5, 2)}
assert hodgebn.threshold_d(1, 2, [1] * 5, L=2) == Fraction(1, 49)
s = hodgebn.infimum_threshold([{'k': 1, 'g': 2, 'chi': -1, 'L': 0}, {'k': 1, 'g': 2, 'chi': -1, 'L': 2}], [1] * 5)
assert s['infimum'] == Fraction(-1, 3) and not s['positive']
try:
    hodgebn.teich_intersections(1, 2, -1.5, L=2)
    raise AssertionError('floats must be rejected')
except TypeError:
    pass
");
    }

    #[test]
    fn table_round_trip() {
        run(c"
t = hodgebn.generate_table((3, 3), (1, 1), 4, 3)
assert t == hodgebn.generate_table((3, 3), (1, 1), 4, 3, jobs=4)
cell = hodgebn.query_table(t, 3, 1, 4, [0, 1, 3])
assert cell['n'] == '24'
assert hodgebn.query_table(t, 3, 2, 4, [0, 1, 3]) is None
try:
    hodgebn.query_table(t.replace('\"schema\": 1', '\"schema\": 2'), 3, 1, 4, [0, 1, 3])
    raise AssertionError('expected SchemaError')
except hodgebn.SchemaError:
    pass
");
    }
}
