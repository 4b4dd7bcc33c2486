//! Python bindings: `import pyconstacode`.

use std::sync::Arc;

use constacode::cli::{self, Command, OutputFormat, RunConfig};
use constacode::{export, oracle, AmbientRing, CodeSpec, Error, Field, FieldElem, Poly};
use pyo3::exceptions::{PyMemoryError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::TooLarge(_) => PyMemoryError::new_err(e.to_string()),
        Error::ConsistencyFailure(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A finite field GF(p^m).
#[pyclass(name = "Field", frozen)]
struct PyField {
    inner: Arc<Field>,
}

impl PyField {
    fn elem(&self, coords: Vec<u32>) -> PyResult<FieldElem> {
        self.inner.from_coords(&coords).map_err(py_err)
    }
}

#[pymethods]
impl PyField {
    #[new]
    #[pyo3(signature = (p, m = 1, modulus = None))]
    fn new(p: u32, m: usize, modulus: Option<Vec<u32>>) -> PyResult<Self> {
        Ok(PyField { inner: Field::new(p, m, modulus).map_err(py_err)? })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.characteristic()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn order(&self) -> u64 {
        self.inner.order()
    }

    #[getter]
    fn modulus(&self) -> Vec<u32> {
        self.inner.modulus().to_vec()
    }

    fn mul(&self, a: Vec<u32>, b: Vec<u32>) -> PyResult<Vec<u32>> {
        Ok(self.inner.mul(&self.elem(a)?, &self.elem(b)?).coords().to_vec())
    }

    fn inv(&self, a: Vec<u32>) -> PyResult<Vec<u32>> {
        Ok(self.inner.inv(&self.elem(a)?).map_err(py_err)?.coords().to_vec())
    }

    fn mult_order(&self, a: Vec<u32>) -> PyResult<u64> {
        self.inner.mult_order(&self.elem(a)?).map_err(py_err)
    }

    /// Monic irreducible factors of a polynomial (coefficient coordinates, lowest first)
    /// with multiplicities.
    fn factorize(&self, coeffs: Vec<Vec<u32>>) -> PyResult<Vec<(Vec<Vec<u32>>, usize)>> {
        let c = coeffs.into_iter().map(|x| self.elem(x)).collect::<PyResult<Vec<_>>>()?;
        let fac = Poly::new(self.inner.clone(), c).factorize().map_err(py_err)?;
        Ok(fac
            .factors
            .iter()
            .map(|(g, k)| (g.coeffs().iter().map(|e| e.coords().to_vec()).collect(), *k))
            .collect())
    }

    /// Whether x^n - a is irreducible, decided from the order of a.
    fn binomial_irreducible(&self, n: usize, a: Vec<u32>) -> PyResult<bool> {
        constacode::binomial_irreducible(&self.inner, n, &self.elem(a)?).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }
}

/// The ring R[x]/(x^{np^s} - alpha - u*beta) with R = GF(p^m) + u GF(p^m).
#[pyclass(name = "AmbientRing", frozen)]
struct PyAmbientRing {
    inner: Arc<AmbientRing>,
}

impl PyAmbientRing {
    fn code(&self, exponents: Vec<u32>) -> PyResult<CodeSpec> {
        CodeSpec::new(&self.inner, exponents).map_err(py_err)
    }
}

#[pymethods]
impl PyAmbientRing {
    #[new]
    #[pyo3(signature = (field, s, n, alpha, beta, seed = constacode::poly::DEFAULT_SEED))]
    fn new(field: &PyField, s: u32, n: usize, alpha: Vec<u32>, beta: Vec<u32>, seed: u64) -> PyResult<Self> {
        let (a, b) = (field.elem(alpha)?, field.elem(beta)?);
        let inner = AmbientRing::build_with_seed(&field.inner, s, n, &a, &b, seed).map_err(py_err)?;
        Ok(PyAmbientRing { inner })
    }

    #[getter]
    fn length(&self) -> usize {
        self.inner.length()
    }

    #[getter]
    fn num_factors(&self) -> usize {
        self.inner.num_factors()
    }

    #[getter]
    fn irreducible_case(&self) -> bool {
        self.inner.is_irreducible_case()
    }

    /// Residue factors f_j as text, in canonical order.
    fn factors(&self) -> Vec<String> {
        self.inner.factors().iter().map(|f| f.f.to_string()).collect()
    }

    fn dual_ring(&self) -> PyResult<PyAmbientRing> {
        Ok(PyAmbientRing { inner: self.inner.dual().map_err(py_err)? })
    }

    /// Every exponent vector, last index varying fastest.
    fn codes(&self) -> Vec<Vec<u32>> {
        constacode::enumerate_codes(&self.inner).map(|c| c.exponents().to_vec()).collect()
    }

    fn log_cardinality(&self, exponents: Vec<u32>) -> PyResult<u64> {
        Ok(self.code(exponents)?.log_cardinality())
    }

    fn generator(&self, exponents: Vec<u32>) -> PyResult<String> {
        Ok(self.code(exponents)?.generator().to_string())
    }

    fn dual(&self, exponents: Vec<u32>) -> PyResult<Vec<u32>> {
        Ok(self.code(exponents)?.dual().map_err(py_err)?.exponents().to_vec())
    }

    #[pyo3(signature = (exponents, cap = oracle::DEFAULT_CAP))]
    fn is_self_dual(&self, exponents: Vec<u32>, cap: u64) -> PyResult<bool> {
        self.code(exponents)?.is_self_dual(cap).map_err(py_err)
    }

    /// Full classification as JSON.
    #[pyo3(signature = (cap = oracle::DEFAULT_CAP))]
    fn classify_json(&self, cap: u64) -> PyResult<String> {
        Ok(export::to_json(&export::classify(&self.inner, cap).map_err(py_err)?))
    }

    /// Exhaustive cross-check; returns the report as JSON.
    #[pyo3(signature = (cap = oracle::DEFAULT_CAP))]
    fn verify(&self, cap: u64) -> PyResult<String> {
        Ok(export::to_json(&oracle::verify_ring(&self.inner, cap).map_err(py_err)?))
    }

    fn __repr__(&self) -> String {
        format!(
            "AmbientRing(length={}, lambda={}, factors={})",
            self.inner.length(),
            self.inner.chain_ring().format(self.inner.lambda()),
            self.inner.num_factors()
        )
    }
}

/// Runs a command as the `constacode` binary would; returns (stdout, stderr, exit code).
#[pyfunction]
#[pyo3(signature = (command, p, s, n, alpha, beta, m = 1, output = "json", cap = oracle::DEFAULT_CAP))]
#[allow(clippy::too_many_arguments)]
fn run(
    command: &str,
    p: u32,
    s: u32,
    n: usize,
    alpha: Vec<u32>,
    beta: Vec<u32>,
    m: usize,
    output: &str,
    cap: u64,
) -> PyResult<(String, String, i32)> {
    let command = match command {
        "factor" => Command::Factor,
        "codes" => Command::Codes,
        "dual" => Command::Dual,
        "verify" => Command::Verify,
        other => return Err(PyValueError::new_err(format!("unknown command '{other}'"))),
    };
    let mut cfg = RunConfig::new(command, p, m, s, n, alpha, beta);
    cfg.output = output.parse::<OutputFormat>().map_err(py_err)?;
    cfg.cap = cap;
    let out = cli::run(&cfg);
    Ok((out.stdout, out.stderr, out.exit_code))
}

#[pymodule]
fn pyconstacode(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyAmbientRing>()?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add("DEFAULT_CAP", oracle::DEFAULT_CAP)?;
    Ok(())
}
