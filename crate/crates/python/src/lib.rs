//! Python bindings for the segre-mcm engine.
//!
//! Structured reports (verdicts, invariants, cohomology tables) are returned
//! as plain dicts with the same keys as the command-line JSON output.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use segre_mcm_core as core;
use serde::Serialize;
use serde_json::Value;

fn value_error(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, value: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match value {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.as_u64().unwrap_or_default().into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, v) in map {
                dict.set_item(k, to_py(py, v)?)?;
            }
            dict.into_any()
        }
    })
}

fn report<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let json = serde_json::to_value(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    to_py(py, &json)
}

/// A polynomial ring or graded complete intersection, parsed from a spec
/// string such as `"ci:n=5,deg=6"` or `"poly:n=2"`.
#[pyclass(name = "RingSpec", module = "segre_mcm", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingSpec(core::GradedRingSpec);

#[pymethods]
impl RingSpec {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        spec.parse().map(RingSpec).map_err(value_error)
    }

    #[staticmethod]
    fn polynomial(n: u32) -> PyResult<Self> {
        core::GradedRingSpec::polynomial(n).map(RingSpec).map_err(value_error)
    }

    #[staticmethod]
    fn complete_intersection(n: u32, degrees: Vec<u32>) -> PyResult<Self> {
        core::GradedRingSpec::complete_intersection(n, degrees)
            .map(RingSpec)
            .map_err(value_error)
    }

    /// Copy of this spec asserting an isolated singularity.
    fn with_isolated_singularity(&self) -> Self {
        RingSpec(self.0.clone().with_assumption(core::Assumption::IsolatedSingularity))
    }

    #[getter]
    fn n(&self) -> u32 {
        self.0.n()
    }

    #[getter]
    fn degrees(&self) -> Vec<u32> {
        self.0.degrees().to_vec()
    }

    #[getter]
    fn krull_dimension(&self) -> u32 {
        self.0.krull_dimension()
    }

    #[getter]
    fn a_invariant(&self) -> i64 {
        self.0.a_invariant()
    }

    #[getter]
    fn multiplicity(&self) -> u64 {
        self.0.multiplicity()
    }

    fn hilbert_series(&self) -> HilbertSeries {
        HilbertSeries(self.0.hilbert_series())
    }

    fn koszul_graded_dimension(&self, j: i64) -> BigInt {
        self.0.koszul_graded_dimension(j)
    }

    /// Dimensions of the top local cohomology in degrees `lo..=hi`.
    fn top_local_cohomology(&self, lo: i64, hi: i64) -> Vec<BigInt> {
        let f = core::top_local_cohomology(&self.0);
        (lo..=hi).map(|j| f.value(j)).collect()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RingSpec('{}')", self.0)
    }
}

/// Rational generating function `N(t) / prod (1 - t^e)`.
#[pyclass(name = "HilbertSeries", module = "segre_mcm", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct HilbertSeries(core::HilbertSeries);

#[pymethods]
impl HilbertSeries {
    #[new]
    fn new(numerator: Vec<BigInt>, denominator_exponents: Vec<u32>) -> PyResult<Self> {
        core::HilbertSeries::new(core::IntPolynomial::new(numerator), denominator_exponents)
            .map(HilbertSeries)
            .map_err(value_error)
    }

    #[getter]
    fn numerator(&self) -> Vec<BigInt> {
        self.0.numerator().coeffs().to_vec()
    }

    #[getter]
    fn denominator_exponents(&self) -> Vec<u32> {
        self.0.denominator_exponents().to_vec()
    }

    /// Coefficients of `t^0 .. t^upto`.
    fn expand(&self, upto: usize) -> Vec<BigInt> {
        self.0.expand(upto)
    }

    fn series_degree(&self) -> PyResult<i64> {
        self.0.series_degree().map_err(value_error)
    }

    fn krull_dimension(&self) -> PyResult<u32> {
        self.0.krull_dimension().map_err(value_error)
    }

    fn multiplicity(&self) -> PyResult<BigInt> {
        self.0.multiplicity().map_err(value_error)
    }

    /// Hilbert polynomial as a string in `j`.
    fn hilbert_polynomial(&self) -> PyResult<String> {
        let f = self.0.to_dimension_function().map_err(value_error)?;
        Ok(f.pos_tail().to_string())
    }

    /// Graded dimension in degree `j`, for any integer `j`.
    fn dimension(&self, j: i64) -> PyResult<BigInt> {
        let f = self.0.to_dimension_function().map_err(value_error)?;
        Ok(f.value(j))
    }

    /// Whether both series are the same rational function.
    fn equivalent(&self, other: &HilbertSeries) -> bool {
        self.0.equivalent(&other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("HilbertSeries('{}')", self.0)
    }
}

/// The Segre product `A[twist] # B`.
#[pyclass(name = "SegreRing", module = "segre_mcm", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct SegreRing(core::SegreRingSpec);

#[pymethods]
impl SegreRing {
    #[new]
    #[pyo3(signature = (a, b, twist = 0))]
    fn new(a: &RingSpec, b: &RingSpec, twist: i64) -> PyResult<Self> {
        core::SegreRingSpec::new(a.0.clone(), b.0.clone(), twist)
            .map(SegreRing)
            .map_err(value_error)
    }

    #[getter]
    fn twist(&self) -> i64 {
        self.0.twist()
    }

    #[getter]
    fn krull_dimension(&self) -> u32 {
        self.0.krull_dimension()
    }

    /// Hilbert series of the ring (twist 0 only).
    fn hilbert_series(&self) -> PyResult<HilbertSeries> {
        core::segre_hilbert_series(&self.0).map(HilbertSeries).map_err(value_error)
    }

    /// Twists `k` with `A[k] # B` maximal Cohen-Macaulay.
    fn mcm_window(&self) -> Vec<i64> {
        self.0.mcm_window().collect()
    }

    fn is_mcm(&self) -> PyResult<bool> {
        core::is_mcm_twist(&self.0).map_err(value_error)
    }

    /// Local cohomology table as a list of per-`q` dicts.
    fn kunneth_table<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report(py, &core::report::cohomology_entries(&core::kunneth_table(&self.0)))
    }

    /// Invariants of the untwisted ring.
    fn invariants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let (invariants, _) = core::segre_invariants(&self.0).map_err(value_error)?;
        report(py, &invariants)
    }

    fn __repr__(&self) -> String {
        format!(
            "SegreRing('{}', '{}', twist={})",
            self.0.factor_a(),
            self.0.factor_b(),
            self.0.twist()
        )
    }
}

#[pyfunction]
fn segre_hilbert_series(a: &RingSpec, b: &RingSpec) -> PyResult<HilbertSeries> {
    let ring = core::SegreRingSpec::ring(a.0.clone(), b.0.clone()).map_err(value_error)?;
    core::segre_hilbert_series(&ring).map(HilbertSeries).map_err(value_error)
}

#[pyfunction]
fn rank_one_verdict<'py>(py: Python<'py>, a: &RingSpec, b: &RingSpec) -> PyResult<Bound<'py, PyAny>> {
    report(py, &core::rank_one_verdict(&a.0, &b.0).map_err(value_error)?)
}

#[pyfunction]
fn very_small_verdict<'py>(py: Python<'py>, a: &RingSpec, b: &RingSpec) -> PyResult<Bound<'py, PyAny>> {
    report(py, &core::very_small_verdict(&a.0, &b.0).map_err(value_error)?)
}

/// `i = None` stands for an infinite I-invariant.
#[pyfunction]
#[pyo3(signature = (dimension, is_ufd, is_cm, e, i))]
fn ufd_rule<'py>(
    py: Python<'py>,
    dimension: u32,
    is_ufd: bool,
    is_cm: bool,
    e: BigInt,
    i: Option<BigInt>,
) -> PyResult<Bound<'py, PyAny>> {
    let i = i.map_or(core::Length::Infinite, core::Length::Finite);
    report(py, &core::ufd_rule(dimension, is_ufd, is_cm, &e, &i))
}

#[pyfunction]
fn very_small_rank_bound(e: BigInt, i: BigInt) -> PyResult<BigInt> {
    if e < BigInt::from(1) {
        return Err(PyValueError::new_err("multiplicity must be positive"));
    }
    Ok(core::very_small_rank_bound(&e, &i))
}

#[pyfunction]
fn paramdeg_interval(e: BigInt, i: BigInt) -> (BigInt, BigInt) {
    let [lo, hi] = core::paramdeg_interval(&e, &i);
    (lo, hi)
}

#[pyfunction]
fn binomial(a: i64, b: i64) -> PyResult<BigInt> {
    core::binomial(a, b).map_err(value_error)
}

#[pymodule]
pub mod segre_mcm {
    #[pymodule_export]
    use super::{
        binomial, paramdeg_interval, rank_one_verdict, segre_hilbert_series, ufd_rule, very_small_rank_bound,
        very_small_verdict, HilbertSeries, RingSpec, SegreRing,
    };
}
