//! Python bindings for knotdet.

use num_bigint::BigInt;
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use knotdet::braid::bundled_corpus;
use knotdet::kashaev::{self, KashaevMode};
use knotdet::{foxburau, mcmahon, parse_braid, verma_oracle, BraidWord, LaurentPoly};

fn err(e: knotdet::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A braid word on a fixed number of strands.
#[pyclass(name = "Braid", module = "knotdet", frozen)]
pub struct PyBraid {
    inner: BraidWord,
}

#[pymethods]
impl PyBraid {
    #[new]
    #[pyo3(signature = (word, strands=None))]
    fn new(word: &str, strands: Option<usize>) -> PyResult<Self> {
        parse_braid(word, strands).map(|inner| PyBraid { inner }).map_err(err)
    }

    #[getter]
    fn strands(&self) -> usize {
        self.inner.strands()
    }

    #[getter]
    fn writhe(&self) -> i64 {
        self.inner.writhe()
    }

    #[getter]
    fn word(&self) -> String {
        self.inner.to_word_string()
    }

    fn is_knot(&self) -> bool {
        self.inner.closure_is_knot()
    }

    fn reversed(&self) -> Self {
        PyBraid { inner: self.inner.reversed() }
    }

    fn mirror(&self) -> Self {
        PyBraid { inner: self.inner.mirror() }
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_word_string()
    }

    fn __repr__(&self) -> String {
        format!("Braid({:?}, strands={})", self.inner.to_word_string(), self.inner.strands())
    }
}

/// Laurent polynomial in `q` (quarter-integer powers allowed) and `z`.
#[pyclass(name = "Poly", module = "knotdet", frozen, eq)]
#[derive(PartialEq)]
pub struct PyPoly {
    inner: LaurentPoly,
}

#[pymethods]
impl PyPoly {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(|inner| PyPoly { inner }).map_err(err)
    }

    /// `(q_exponent, z_exponent, coefficient)` triples; q exponents are floats
    /// because they may be quarter-integers.
    fn terms(&self) -> Vec<(f64, i64, BigInt)> {
        self.inner.iter().map(|(e, f, c)| (e.0 as f64 / 4.0, f, c.clone())).collect()
    }

    #[pyo3(signature = (q, z=Complex64::new(1.0, 0.0)))]
    fn evaluate(&self, q: Complex64, z: Complex64) -> Complex64 {
        self.inner.eval(q, z)
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({:?})", self.inner.to_string())
    }
}

/// `<K>_N` as a complex number, plus the exact element of `Z[zeta_N]` written
/// as a polynomial in `q = zeta_N` when it was computed.
#[pyclass(name = "KashaevValue", module = "knotdet", frozen, get_all)]
pub struct PyKashaevValue {
    n: u32,
    value: Complex64,
    exact: Option<String>,
}

#[pymethods]
impl PyKashaevValue {
    fn __abs__(&self) -> f64 {
        self.value.norm()
    }

    fn __repr__(&self) -> String {
        format!("KashaevValue(n={}, value={}, exact={:?})", self.n, self.value, self.exact)
    }
}

impl From<kashaev::KashaevValue> for PyKashaevValue {
    fn from(v: kashaev::KashaevValue) -> Self {
        PyKashaevValue { n: v.n, value: v.approx, exact: v.exact.map(|x| x.to_string()) }
    }
}

/// Colored Jones polynomial `J'_K(N)`. `engine` is "mcmahon" or "oracle".
#[pyfunction]
#[pyo3(signature = (braid, n, engine="mcmahon"))]
fn colored_jones(py: Python<'_>, braid: &PyBraid, n: u32, engine: &str) -> PyResult<PyPoly> {
    let f = match engine {
        "mcmahon" => mcmahon::colored_jones,
        "oracle" => verma_oracle::state_sum_jones,
        other => return Err(PyValueError::new_err(format!("unknown engine {other:?}"))),
    };
    let b = &braid.inner;
    py.detach(|| f(b, n)).map(|inner| PyPoly { inner }).map_err(err)
}

/// Normalized Alexander polynomial. `engine` is "mcmahon" or "fox".
#[pyfunction]
#[pyo3(signature = (braid, engine="mcmahon"))]
fn alexander(braid: &PyBraid, engine: &str) -> PyResult<PyPoly> {
    let out = match engine {
        "mcmahon" => mcmahon::alexander(&braid.inner),
        "fox" => foxburau::abelianize_check(&braid.inner).map(|(_, p)| p),
        other => return Err(PyValueError::new_err(format!("unknown engine {other:?}"))),
    };
    out.map(|inner| PyPoly { inner }).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (braid, n, exact=false))]
fn kashaev_value(py: Python<'_>, braid: &PyBraid, n: u32, exact: bool) -> PyResult<PyKashaevValue> {
    let mode = if exact { KashaevMode::Exact } else { KashaevMode::Float };
    let b = &braid.inner;
    py.detach(|| kashaev::kashaev_value(b, n, mode)).map(Into::into).map_err(err)
}

/// `q sum_n (1 - q)...(1 - q^n)` at `q = exp(2 pi i / N)`.
#[pyfunction]
fn kz_series(n: u32) -> PyResult<PyKashaevValue> {
    kashaev::kz_series(n).map(Into::into).map_err(err)
}

/// List of dicts with keys `N`, `abs_value`, `rate`, `digits_lost`, `reliable`.
#[pyfunction]
fn volume_rate<'py>(py: Python<'py>, braid: &PyBraid, ns: Vec<u32>) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let b = &braid.inner;
    let samples = py.detach(|| kashaev::volume_rate(b, &ns)).map_err(err)?;
    samples
        .iter()
        .map(|s| {
            let d = PyDict::new(py);
            d.set_item("N", s.n)?;
            d.set_item("abs_value", s.abs_value)?;
            d.set_item("rate", s.rate)?;
            d.set_item("digits_lost", s.digits_lost)?;
            d.set_item("reliable", s.is_reliable())?;
            Ok(d)
        })
        .collect()
}

#[pyfunction]
fn mahler_measure(poly: &PyPoly) -> PyResult<f64> {
    kashaev::mahler_measure(&poly.inner).map_err(err)
}

#[pyfunction]
fn figure_eight_volume() -> f64 {
    kashaev::figure_eight_volume()
}

#[pyfunction]
fn five_two_volume() -> PyResult<f64> {
    kashaev::five_two_volume().map_err(err)
}

/// `beta(z_i)` as a string such as `"z1 z2 z1^-1"`.
#[pyfunction]
fn artin_action(braid: &PyBraid, i: usize) -> PyResult<String> {
    foxburau::artin_action(&braid.inner, i).map(|w| w.to_string()).map_err(err)
}

/// Fox Jacobian `psi(beta)` with entries printed as group-ring elements.
#[pyfunction]
fn psi_matrix(braid: &PyBraid) -> Vec<Vec<String>> {
    foxburau::psi_matrix(&braid.inner).iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect()
}

/// The bundled corpus as a list of dicts.
#[pyfunction]
fn corpus(py: Python<'_>) -> PyResult<Vec<Bound<'_, PyDict>>> {
    bundled_corpus()
        .into_iter()
        .map(|e| {
            let d = PyDict::new(py);
            d.set_item("name", e.name)?;
            d.set_item("strands", e.strands)?;
            d.set_item("word", e.word)?;
            d.set_item("alexander", e.alexander)?;
            d.set_item("volume", e.volume)?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
#[pyo3(name = "knotdet")]
pub fn knotdet_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBraid>()?;
    m.add_class::<PyPoly>()?;
    m.add_class::<PyKashaevValue>()?;
    m.add_function(wrap_pyfunction!(colored_jones, m)?)?;
    m.add_function(wrap_pyfunction!(alexander, m)?)?;
    m.add_function(wrap_pyfunction!(kashaev_value, m)?)?;
    m.add_function(wrap_pyfunction!(kz_series, m)?)?;
    m.add_function(wrap_pyfunction!(volume_rate, m)?)?;
    m.add_function(wrap_pyfunction!(mahler_measure, m)?)?;
    m.add_function(wrap_pyfunction!(figure_eight_volume, m)?)?;
    m.add_function(wrap_pyfunction!(five_two_volume, m)?)?;
    m.add_function(wrap_pyfunction!(artin_action, m)?)?;
    m.add_function(wrap_pyfunction!(psi_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(corpus, m)?)?;
    Ok(())
}
