//! Python bindings: polynomials, operators, parameters, single-case
//! evaluation, the random suite and sharpness scans.

use bnineq::harness::{self, FixedParams};
use bnineq::ineq::Case;
use bnineq::{
    circle, BnOperator, CaseParams, ComplexPoly, Evaluator, StatementId, SuiteConfig, C64,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn to_py(e: bnineq::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn statement(id: &str) -> PyResult<StatementId> {
    id.parse().map_err(to_py)
}

/// Complex polynomial with coefficients in ascending order.
#[pyclass(name = "Poly", module = "bnineq", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPoly(ComplexPoly);

#[pymethods]
impl PyPoly {
    #[new]
    fn new(coeffs: Vec<C64>) -> PyResult<Self> {
        if coeffs
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(PyValueError::new_err("coefficients must be finite"));
        }
        Ok(Self(ComplexPoly::new(coeffs)))
    }

    /// Polynomial `leading * prod (z - root)`.
    #[staticmethod]
    fn from_roots(leading: C64, roots: Vec<C64>) -> PyResult<Self> {
        ComplexPoly::from_roots(leading, &roots)
            .map(Self)
            .map_err(to_py)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    #[getter]
    fn coeffs(&self) -> Vec<C64> {
        self.0.coeffs().to_vec()
    }

    fn __call__(&self, z: C64) -> C64 {
        self.0.eval(z)
    }

    fn derivative(&self) -> Self {
        Self(self.0.derivative())
    }

    /// `z^n conj(P(1/conj z))` for ambient degree `n`.
    fn conj_reciprocal(&self, n: usize) -> PyResult<Self> {
        self.0.conj_reciprocal(n).map(Self).map_err(to_py)
    }

    /// `(value, theta)` of `max |P|` on `|z| = k`.
    #[pyo3(signature = (k, tol = circle::DEFAULT_TOL))]
    fn max_modulus(&self, k: f64, tol: f64) -> PyResult<(f64, f64)> {
        let m = circle::max_modulus(&self.0, k, tol).map_err(to_py)?;
        Ok((m.value, m.theta))
    }

    /// `(value, theta)` of `min |P|` on `|z| = k`.
    #[pyo3(signature = (k, tol = circle::DEFAULT_TOL))]
    fn min_modulus(&self, k: f64, tol: f64) -> PyResult<(f64, f64)> {
        let m = circle::min_modulus(&self.0, k, tol).map_err(to_py)?;
        Ok((m.value, m.theta))
    }

    fn roots(&self) -> PyResult<Vec<C64>> {
        circle::find_roots(&self.0).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Poly({:?})", self.0.coeffs())
    }
}

/// Admissible operator `λ0 P + λ1 (nz/2) P' + λ2 (nz/2)^2 P''/2`.
#[pyclass(name = "Operator", module = "bnineq", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyOperator(BnOperator);

#[pymethods]
impl PyOperator {
    #[new]
    fn new(lambda0: C64, lambda1: C64, lambda2: C64, n: usize) -> PyResult<Self> {
        BnOperator::validate(lambda0, lambda1, lambda2, n)
            .map(Self)
            .map_err(to_py)
    }

    #[staticmethod]
    fn identity(n: usize) -> PyResult<Self> {
        BnOperator::identity(n).map(Self).map_err(to_py)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn lambdas(&self) -> (C64, C64, C64) {
        let [a, b, c] = self.0.lambda();
        (a, b, c)
    }

    /// `B[z^n] / z^n`.
    #[getter]
    fn monomial_image(&self) -> C64 {
        self.0.monomial_image()
    }

    fn apply(&self, p: &PyPoly) -> PyResult<PyPoly> {
        self.0.apply(&p.0).map(PyPoly).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        let [a, b, c] = self.0.lambda();
        format!("Operator({a}, {b}, {c}, n={})", self.0.n())
    }
}

#[pyclass(name = "Params", module = "bnineq", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyParams(CaseParams);

#[pymethods]
impl PyParams {
    #[new]
    #[pyo3(signature = (k, r, R, alpha = C64::new(0.0, 0.0), beta = C64::new(0.0, 0.0), zs = None))]
    #[allow(non_snake_case)]
    fn new(k: f64, r: f64, R: f64, alpha: C64, beta: C64, zs: Option<Vec<C64>>) -> PyResult<Self> {
        let zs = zs.unwrap_or_else(|| vec![C64::new(1.0, 0.0)]);
        CaseParams::new(k, r, R, alpha, beta, zs)
            .map(Self)
            .map_err(to_py)
    }

    #[getter]
    fn k(&self) -> f64 {
        self.0.k()
    }

    #[getter]
    fn r(&self) -> f64 {
        self.0.r()
    }

    #[getter(R)]
    fn big_r(&self) -> f64 {
        self.0.big_r()
    }

    #[getter]
    fn alpha(&self) -> C64 {
        self.0.alpha()
    }

    #[getter]
    fn beta(&self) -> C64 {
        self.0.beta()
    }

    #[getter]
    fn zs(&self) -> Vec<C64> {
        self.0.zs().to_vec()
    }

    /// `β{((R+k)/(k+r))^n − |α|} − α`.
    fn phi(&self, n: usize) -> C64 {
        self.0.phi_k(n)
    }

    fn __repr__(&self) -> String {
        let p = &self.0;
        format!(
            "Params(k={}, r={}, R={}, alpha={}, beta={})",
            p.k(),
            p.r(),
            p.big_r(),
            p.alpha(),
            p.beta()
        )
    }
}

#[pyclass(
    name = "SlackResult",
    module = "bnineq",
    frozen,
    get_all,
    skip_from_py_object
)]
#[derive(Clone)]
struct PySlackResult {
    statement: String,
    z: C64,
    lhs: f64,
    rhs: f64,
    slack: f64,
    rel_slack: f64,
}

#[pymethods]
impl PySlackResult {
    fn is_violation(&self, tol: f64) -> bool {
        self.rel_slack.is_nan() || self.rel_slack < -tol
    }

    fn __repr__(&self) -> String {
        format!(
            "SlackResult({}, z={}, lhs={}, rhs={}, rel_slack={:e})",
            self.statement, self.z, self.lhs, self.rhs, self.rel_slack
        )
    }
}

/// Evaluates one statement. `f` is the dominating polynomial for `t1`/`c1`.
#[pyfunction]
#[pyo3(signature = (statement_id, operator, p, params, f = None, tol = circle::DEFAULT_TOL))]
fn evaluate(
    statement_id: &str,
    operator: &PyOperator,
    p: &PyPoly,
    params: &PyParams,
    f: Option<PyRef<'_, PyPoly>>,
    tol: f64,
) -> PyResult<Vec<PySlackResult>> {
    let case = Case {
        statement: statement(statement_id)?,
        operator: operator.0,
        p: p.0.clone(),
        f: f.map(|f| f.0.clone()),
        params: params.0.clone(),
    };
    let ev = Evaluator::new(tol).map_err(to_py)?;
    let results = ev.evaluate(&case).map_err(to_py)?;
    Ok(results
        .into_iter()
        .map(|r| PySlackResult {
            statement: r.statement.to_string(),
            z: r.z,
            lhs: r.lhs,
            rhs: r.rhs,
            slack: r.slack,
            rel_slack: r.rel_slack,
        })
        .collect())
}

/// Runs the random suite and returns the report as a JSON string.
#[pyfunction]
#[pyo3(signature = (statements = None, cases = 100, seed = 0, n_min = 1, n_max = 8, k = None, rhs_scale = 1.0, sharpness_cases = 10))]
#[allow(clippy::too_many_arguments)]
fn run_suite(
    py: Python<'_>,
    statements: Option<Vec<String>>,
    cases: usize,
    seed: u64,
    n_min: usize,
    n_max: usize,
    k: Option<f64>,
    rhs_scale: f64,
    sharpness_cases: usize,
) -> PyResult<String> {
    let statements = match statements {
        Some(ids) => ids
            .iter()
            .map(|s| statement(s))
            .collect::<PyResult<Vec<_>>>()?,
        None => StatementId::MAIN.to_vec(),
    };
    let config = SuiteConfig {
        statements,
        cases,
        seed,
        n_min,
        n_max,
        rhs_scale,
        sharpness_cases,
        fixed: FixedParams {
            k,
            ..FixedParams::default()
        },
        ..SuiteConfig::default()
    };
    let report = py.detach(|| harness::run_suite(&config)).map_err(to_py)?;
    report.to_json().map_err(to_py)
}

/// Largest relative gap between the sides over `cases` members of the
/// statement's equality family, as a JSON string.
#[pyfunction]
#[pyo3(signature = (statement_id, cases = 100, seed = 0))]
fn sharpness_scan(py: Python<'_>, statement_id: &str, cases: usize, seed: u64) -> PyResult<String> {
    let id = statement(statement_id)?;
    let config = SuiteConfig {
        statements: vec![id],
        ..SuiteConfig::default()
    };
    let entry = py
        .detach(|| harness::sharpness_scan(id, cases, seed, &config))
        .map_err(to_py)?;
    serde_json::to_string(&entry).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// `(id, description)` for every statement.
#[pyfunction]
fn list_statements() -> Vec<(String, String)> {
    StatementId::all()
        .map(|id| (id.to_string(), id.description().to_string()))
        .collect()
}

#[pymodule]
#[pyo3(name = "bnineq")]
fn bnineq_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PyOperator>()?;
    m.add_class::<PyParams>()?;
    m.add_class::<PySlackResult>()?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(sharpness_scan, m)?)?;
    m.add_function(wrap_pyfunction!(list_statements, m)?)?;
    Ok(())
}
