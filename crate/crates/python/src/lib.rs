//! Python bindings for `qfe`.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::Value;

use qfe::analyze::{decompose, uniqueness_oracle, verify_fe};
use qfe::feseq::{self, FESequence};
use qfe::poly::{self, Polynomial};
use qfe::{PrimeSet, Ring, RingDescriptor};

fn err(e: qfe::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn ring_of(text: &str) -> PyResult<Ring> {
    let descriptor: RingDescriptor = text.parse().map_err(err)?;
    Ring::new(descriptor).map_err(err)
}

fn prime_set(primes: Option<Vec<u64>>) -> PyResult<PrimeSet> {
    match primes {
        None => Ok(PrimeSet::all()),
        Some(ps) => PrimeSet::new(ps).map_err(err),
    }
}

fn to_python<'py>(py: Python<'py>, value: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (value.to_string(),))
}

#[pyclass(name = "Polynomial", module = "pyqfe", frozen)]
#[derive(Clone)]
struct PyPolynomial(Polynomial);

#[pymethods]
impl PyPolynomial {
    /// Ascending coefficients as scalar strings, e.g. `["1", "-1/2"]`.
    #[new]
    #[pyo3(signature = (coeffs, ring = "rational"))]
    fn new(coeffs: Vec<String>, ring: &str) -> PyResult<Self> {
        let ring = ring_of(ring)?;
        let values: Vec<Value> = coeffs.into_iter().map(Value::String).collect();
        Polynomial::parse(&ring, &values).map(PyPolynomial).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (n, ring = "rational"))]
    fn quantum_integer(n: u64, ring: &str) -> PyResult<Self> {
        poly::quantum_integer(n, &ring_of(ring)?).map(PyPolynomial).map_err(err)
    }

    #[getter]
    fn ring(&self) -> String {
        self.0.descriptor().to_string()
    }

    /// `None` for the zero polynomial.
    #[getter]
    fn degree(&self) -> Option<usize> {
        self.0.degree().finite()
    }

    #[getter]
    fn coeffs(&self) -> Vec<String> {
        self.0.coeffs().iter().map(ToString::to_string).collect()
    }

    fn dilate(&self, m: u64) -> PyResult<Self> {
        poly::dilate(&self.0, m).map(PyPolynomial).map_err(err)
    }

    fn reciprocal(&self) -> PyResult<Self> {
        poly::reciprocal(&self.0).map(PyPolynomial).map_err(err)
    }

    fn exact_div(&self, other: &PyPolynomial) -> PyResult<Self> {
        poly::exact_div(&self.0, &other.0).map(PyPolynomial).map_err(err)
    }

    fn __add__(&self, other: &PyPolynomial) -> PyResult<Self> {
        poly::poly_add(&self.0, &other.0).map(PyPolynomial).map_err(err)
    }

    fn __sub__(&self, other: &PyPolynomial) -> PyResult<Self> {
        poly::poly_sub(&self.0, &other.0).map(PyPolynomial).map_err(err)
    }

    fn __mul__(&self, other: &PyPolynomial) -> PyResult<Self> {
        poly::poly_mul(&self.0, &other.0).map(PyPolynomial).map_err(err)
    }

    fn __eq__(&self, other: &PyPolynomial) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}', ring='{}')", self.0, self.0.descriptor())
    }
}

#[pyclass(name = "Sequence", module = "pyqfe", frozen)]
struct PySequence(FESequence);

#[pymethods]
impl PySequence {
    #[staticmethod]
    #[pyo3(signature = (ring = "rational", primes = None))]
    fn quantum(ring: &str, primes: Option<Vec<u64>>) -> PyResult<Self> {
        Ok(PySequence(feseq::quantum_sequence(&ring_of(ring)?, prime_set(primes)?)))
    }

    #[staticmethod]
    #[pyo3(signature = (ring = "rational"))]
    fn monomial(ring: &str) -> PyResult<Self> {
        Ok(PySequence(feseq::monomial_sequence(&ring_of(ring)?)))
    }

    #[staticmethod]
    #[pyo3(signature = (ring = "rational", primes = None))]
    fn identity(ring: &str, primes: Option<Vec<u64>>) -> PyResult<Self> {
        Ok(PySequence(feseq::identity_sequence(
            &ring_of(ring)?,
            prime_set(primes)?,
        )))
    }

    /// Builtin by name: quantum, monomial, identity, constant2, power7-third.
    #[staticmethod]
    #[pyo3(signature = (name, ring = "rational"))]
    fn builtin(name: &str, ring: &str) -> PyResult<Self> {
        qfe::cli::builtin(name, &ring_of(ring)?)
            .map(PySequence)
            .ok_or_else(|| PyValueError::new_err(format!("unknown builtin {name:?}")))
    }

    /// Seeds map each prime to ascending coefficient strings.
    #[staticmethod]
    #[pyo3(signature = (primes, seeds, ring = "rational"))]
    fn from_seeds(primes: Vec<u64>, seeds: BTreeMap<u64, Vec<String>>, ring: &str) -> PyResult<Self> {
        let ring = ring_of(ring)?;
        let seeds = seeds
            .into_iter()
            .map(|(p, c)| {
                let values: Vec<Value> = c.into_iter().map(Value::String).collect();
                Ok((p, Polynomial::parse(&ring, &values).map_err(err)?))
            })
            .collect::<PyResult<BTreeMap<_, _>>>()?;
        let primes = PrimeSet::new(primes).map_err(err)?;
        feseq::from_seeds(&ring, &primes, seeds).map(PySequence).map_err(err)
    }

    #[getter]
    fn ring(&self) -> String {
        self.0.ring().descriptor().to_string()
    }

    fn eval(&self, n: u64) -> PyResult<PyPolynomial> {
        self.0.eval(n).map(PyPolynomial).map_err(err)
    }

    fn values(&self, bound: u64) -> PyResult<Vec<PyPolynomial>> {
        (1..=bound).map(|n| self.eval(n)).collect()
    }

    fn dilate(&self, t: u64) -> PyResult<Self> {
        feseq::dilate_sequence(&self.0, t).map(PySequence).map_err(err)
    }

    fn reciprocal(&self) -> PyResult<Self> {
        feseq::reciprocal_sequence(&self.0).map(PySequence).map_err(err)
    }

    fn product(&self, other: &PySequence) -> PyResult<Self> {
        feseq::product_sequence(&self.0, &other.0).map(PySequence).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Sequence({})", self.0.describe())
    }
}

/// Verification report as a dict.
#[pyfunction]
fn verify<'py>(py: Python<'py>, seq: &PySequence, bound: u64) -> PyResult<Bound<'py, PyAny>> {
    let report = verify_fe(&seq.0, bound).map_err(err)?;
    to_python(py, &report.to_json())
}

/// Decomposition `f_n = lambda(n) q^(t(n-1)) g_n` as a dict.
#[pyfunction]
fn decompose_sequence<'py>(py: Python<'py>, seq: &PySequence, bound: u64) -> PyResult<Bound<'py, PyAny>> {
    let d = decompose(&seq.0, bound).map_err(err)?;
    to_python(py, &d.to_json().map_err(err)?)
}

/// Solution families of the uniqueness system; each has `a` and the `f_n` coefficient lists.
#[pyfunction]
fn oracle<'py>(py: Python<'py>, bound: u64) -> PyResult<Bound<'py, PyAny>> {
    let outcome = uniqueness_oracle(bound).map_err(err)?;
    let strings = |c: &[num_rational::BigRational]| c.iter().map(ToString::to_string).collect::<Vec<_>>();
    let families: Vec<Value> = outcome
        .families
        .iter()
        .map(|f| {
            let polys: serde_json::Map<String, Value> = f
                .polys
                .iter()
                .map(|(n, c)| (n.to_string(), Value::from(strings(c))))
                .collect();
            serde_json::json!({ "a": f.a.to_string(), "polys": polys })
        })
        .collect();
    let value = serde_json::json!({
        "bound": outcome.bound,
        "unique": outcome.is_unique(),
        "underdetermined": outcome.underdetermined,
        "families": families,
    });
    to_python(py, &value)
}

#[pymodule]
fn pyqfe(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PySequence>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(decompose_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    Ok(())
}
