//! Python bindings: Laurent polynomials, toric division and the mechanism
//! balance pipeline. Exact values cross the boundary as rational strings.

use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

use fourbar_balance::coeff::{format_rational, parse_rational};
use fourbar_balance::{
    self as core, io, Branch, DirectionFunctional, Exponent, GaussianRational as Gq, RateProfile,
};

fn to_py_err(e: core::Error) -> PyErr {
    match e {
        core::Error::DivisionByZero => PyZeroDivisionError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// A Laurent polynomial in z1, z2 with exact Gaussian-rational coefficients.
#[pyclass(name = "Polynomial")]
#[derive(Clone)]
struct PyPolynomial {
    inner: core::Poly,
}

#[pymethods]
impl PyPolynomial {
    /// Builds from terms `(e1, e2, re, im)`; re and im are rational strings
    /// like "3/4", integers or decimals. Repeated exponents accumulate.
    #[new]
    fn new(terms: Vec<(i64, i64, String, String)>) -> PyResult<Self> {
        let mut parsed = Vec::with_capacity(terms.len());
        for (e1, e2, re, im) in terms {
            let re = parse_rational(&re).map_err(PyValueError::new_err)?;
            let im = parse_rational(&im).map_err(PyValueError::new_err)?;
            parsed.push((e1, e2, Gq::new(re, im)));
        }
        Ok(Self {
            inner: core::Poly::from_terms(parsed),
        })
    }

    #[staticmethod]
    fn zero() -> Self {
        Self {
            inner: core::Poly::zero(),
        }
    }

    /// Parses the text format: one `e1 e2 re im` term per line.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: io::parse_poly(text).map_err(to_py_err)?,
        })
    }

    /// Terms as `(e1, e2, re, im)` with rational strings.
    fn terms(&self) -> Vec<(i64, i64, String, String)> {
        self.inner
            .terms()
            .map(|(e, c)| (e.e1, e.e2, format_rational(&c.re), format_rational(&c.im)))
            .collect()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn conj(&self) -> Self {
        Self {
            inner: self.inner.conj_on_torus(),
        }
    }

    /// Vertices of the Newton polygon, counter-clockwise.
    fn newton_polygon(&self) -> PyResult<Vec<(i64, i64)>> {
        let np = core::NewtonPolygon::of(&self.inner).map_err(to_py_err)?;
        Ok(np.vertices().iter().map(|v| (v.e1, v.e2)).collect())
    }

    /// Numeric evaluation at complex `(w1, w2)` away from the axes.
    fn eval(&self, w1: (f64, f64), w2: (f64, f64)) -> (f64, f64) {
        let v = self.inner.eval(
            num_complex::Complex64::new(w1.0, w1.1),
            num_complex::Complex64::new(w2.0, w2.1),
        );
        (v.re, v.im)
    }

    fn __add__(&self, other: &Self) -> Self {
        Self {
            inner: self.inner.add(&other.inner),
        }
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self {
            inner: self.inner.sub(&other.inner),
        }
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self {
            inner: self.inner.mul(&other.inner),
        }
    }

    fn __neg__(&self) -> Self {
        Self {
            inner: self.inner.neg(),
        }
    }

    fn __richcmp__(&self, other: &Self, op: pyo3::basic::CompareOp) -> PyResult<bool> {
        match op {
            pyo3::basic::CompareOp::Eq => Ok(self.inner == other.inner),
            pyo3::basic::CompareOp::Ne => Ok(self.inner != other.inner),
            _ => Err(PyValueError::new_err("polynomials are not ordered")),
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({})", self.inner)
    }
}

/// Toric division: returns `(quotient, remainder)` with
/// `f = quotient * g + remainder` and a zero remainder iff `g` divides `f`.
#[pyfunction]
#[pyo3(signature = (f, g, alpha = 1, beta = 1_000_003))]
fn divide(
    f: &PyPolynomial,
    g: &PyPolynomial,
    alpha: i64,
    beta: i64,
) -> PyResult<(PyPolynomial, PyPolynomial)> {
    if alpha == 0 && beta == 0 {
        return Err(PyValueError::new_err("direction functional must be nonzero"));
    }
    let qr = core::toric_divide(&f.inner, &g.inner, DirectionFunctional::new(alpha, beta))
        .map_err(to_py_err)?;
    Ok((
        PyPolynomial { inner: qr.quotient },
        PyPolynomial {
            inner: qr.remainder,
        },
    ))
}

/// `(divides, remainder)` under the default direction functional.
#[pyfunction]
fn is_divisible(f: &PyPolynomial, g: &PyPolynomial) -> PyResult<(bool, PyPolynomial)> {
    let (ok, witness) = core::is_divisible(&f.inner, &g.inner).map_err(to_py_err)?;
    Ok((ok, PyPolynomial { inner: witness }))
}

/// Monomial helper `c * z1^e1 * z2^e2` with a rational-string coefficient.
#[pyfunction]
#[pyo3(signature = (e1, e2, re = "1".to_string(), im = "0".to_string()))]
fn monomial(e1: i64, e2: i64, re: String, im: String) -> PyResult<PyPolynomial> {
    let re = parse_rational(&re).map_err(PyValueError::new_err)?;
    let im = parse_rational(&im).map_err(PyValueError::new_err)?;
    Ok(PyPolynomial {
        inner: core::Poly::monomial(Exponent::new(e1, e2), Gq::new(re, im)),
    })
}

/// Mechanism design parameters, held exactly.
#[pyclass(name = "DesignParams")]
#[derive(Clone)]
struct PyDesignParams {
    inner: core::DesignParams,
}

#[pymethods]
impl PyDesignParams {
    /// Parses the JSON parameter format (rational strings, `p_i` as
    /// `[re, im]` unit points).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: io::params_from_json(text).map_err(to_py_err)?,
        })
    }

    fn to_json(&self) -> String {
        io::params_to_json(&self.inner)
    }

    /// Kinematic case name: Irreducible, CaseII, CaseIII, CaseIV or CaseV.
    fn case(&self) -> String {
        let p = &self.inner;
        core::classify_case(&p.l1, &p.l2, &p.l3, &p.d).to_string()
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!(
            "DesignParams(l1={}, l2={}, l3={}, d={}, case={})",
            format_rational(&p.l1),
            format_rational(&p.l2),
            format_rational(&p.l3),
            format_rational(&p.d),
            self.case(),
        )
    }
}

/// Per-mode balance verdicts plus the exact witnesses, as a JSON string.
#[pyfunction]
fn check_report(params: &PyDesignParams) -> PyResult<String> {
    let report =
        core::check_balance(&params.inner, DirectionFunctional::default()).map_err(to_py_err)?;
    Ok(io::report_to_json(&report))
}

/// True iff the design is dynamically balanced in at least one mode.
#[pyfunction]
fn is_balanced(params: &PyDesignParams) -> PyResult<bool> {
    Ok(core::check_balance(&params.inner, DirectionFunctional::default())
        .map_err(to_py_err)?
        .balanced)
}

/// Synthesizes a dynamically balanced design. `case` is "IIA" or "IVA";
/// `l` and `d` are rational strings; free parameters may be pinned.
#[pyfunction]
#[pyo3(signature = (case, l, d, seed = 0, q3 = None, j3 = None, m3 = None, m1 = None, m2 = None))]
#[allow(clippy::too_many_arguments)]
fn synthesize(
    case: &str,
    l: &str,
    d: &str,
    seed: u64,
    q3: Option<String>,
    j3: Option<String>,
    m3: Option<String>,
    m1: Option<String>,
    m2: Option<String>,
) -> PyResult<PyDesignParams> {
    let l = parse_rational(l).map_err(PyValueError::new_err)?;
    let d = parse_rational(d).map_err(PyValueError::new_err)?;
    let mut choices = core::SynthesisChoices::default();
    for (src, dst) in [
        (q3, &mut choices.q3),
        (j3, &mut choices.j3),
        (m3, &mut choices.m3),
        (m1, &mut choices.m1),
        (m2, &mut choices.m2),
    ] {
        if let Some(s) = src {
            *dst = Some(parse_rational(&s).map_err(PyValueError::new_err)?);
        }
    }
    let params = match case {
        "IIA" | "iia" => core::synthesize_case_iia(&l, &d, &choices, seed),
        "IVA" | "iva" => core::synthesize_case_iva(&l, &d, &choices, seed),
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown synthesis case '{other}', expected IIA or IVA"
            )))
        }
    }
    .map_err(to_py_err)?;
    Ok(PyDesignParams { inner: params })
}

/// Drift summary of a simulated trajectory.
#[pyclass(name = "SimSummary")]
#[derive(Clone, Copy)]
struct PySimSummary {
    #[pyo3(get)]
    max_closure_residual: f64,
    #[pyo3(get)]
    max_com_drift: f64,
    #[pyo3(get)]
    max_h_drift: f64,
    #[pyo3(get)]
    max_h_cross_error: f64,
    #[pyo3(get)]
    balanced: bool,
}

#[pymethods]
impl PySimSummary {
    fn __repr__(&self) -> String {
        format!(
            "SimSummary(closure={:.3e}, com_drift={:.3e}, h_drift={:.3e}, cross={:.3e}, balanced={})",
            self.max_closure_residual,
            self.max_com_drift,
            self.max_h_drift,
            self.max_h_cross_error,
            self.balanced,
        )
    }
}

fn run_trajectory(
    params: &PyDesignParams,
    branch: &str,
    samples: usize,
    seed: Option<u64>,
) -> PyResult<Vec<core::Sample>> {
    let branch: Branch = branch.parse().map_err(PyValueError::new_err)?;
    let profile = match seed {
        Some(s) => RateProfile::Random(s),
        None => RateProfile::Constant,
    };
    core::trajectory(&params.inner, branch, samples, profile).map_err(to_py_err)
}

/// Traces one crank revolution and returns the drift summary.
#[pyfunction]
#[pyo3(signature = (params, branch = "A", samples = 360, seed = None))]
fn simulate(
    params: &PyDesignParams,
    branch: &str,
    samples: usize,
    seed: Option<u64>,
) -> PyResult<PySimSummary> {
    let trace = run_trajectory(params, branch, samples, seed)?;
    let s = core::verify_balanced(&trace).map_err(to_py_err)?;
    Ok(PySimSummary {
        max_closure_residual: s.max_closure_residual,
        max_com_drift: s.max_com_drift,
        max_h_drift: s.max_h_drift,
        max_h_cross_error: s.max_h_cross_error,
        balanced: s.balanced,
    })
}

/// Traces one crank revolution and returns the sample table as CSV.
#[pyfunction]
#[pyo3(signature = (params, branch = "A", samples = 360, seed = None))]
fn trajectory_csv(
    params: &PyDesignParams,
    branch: &str,
    samples: usize,
    seed: Option<u64>,
) -> PyResult<String> {
    Ok(io::samples_to_csv(&run_trajectory(params, branch, samples, seed)?))
}

#[pymodule]
fn fourbar_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyDesignParams>()?;
    m.add_class::<PySimSummary>()?;
    m.add_function(wrap_pyfunction!(divide, m)?)?;
    m.add_function(wrap_pyfunction!(is_divisible, m)?)?;
    m.add_function(wrap_pyfunction!(monomial, m)?)?;
    m.add_function(wrap_pyfunction!(check_report, m)?)?;
    m.add_function(wrap_pyfunction!(is_balanced, m)?)?;
    m.add_function(wrap_pyfunction!(synthesize, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(trajectory_csv, m)?)?;
    Ok(())
}
