// pyo3 0.22 macro expansion trips this lint on every PyResult return.
#![allow(clippy::useless_conversion)]

use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyOverflowError, PyValueError};
use pyo3::prelude::*;

use d7_algebraic::asymptotics::{self as asym, ComparePoint, SegmentKind};
use d7_algebraic::backlund::{self, Component};
use d7_algebraic::exactfield::{self, BigComplex, GaussianRational, DEFAULT_PRECISION};
use d7_algebraic::ohyama;
use d7_algebraic::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Budget { .. } => PyOverflowError::new_err(e.to_string()),
        Error::Pole { .. }
        | Error::BranchCut { .. }
        | Error::NoConvergence { .. }
        | Error::Numerical(_) => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn coeff_pair(c: &GaussianRational) -> (String, String) {
    (c.re().to_string(), c.im().to_string())
}

/// Exact rational function of `zeta` with Gaussian-rational coefficients.
#[pyclass(name = "RationalFunction", frozen)]
#[derive(Clone)]
struct PyRational {
    inner: exactfield::RationalFunction,
}

#[pymethods]
impl PyRational {
    /// `[(exponent, re, im)]` of the numerator, coefficients as `"p/q"` strings.
    fn numerator(&self) -> Vec<(i64, String, String)> {
        terms(self.inner.numerator())
    }

    fn denominator(&self) -> Vec<(i64, String, String)> {
        terms(self.inner.denominator())
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn derivative(&self) -> Self {
        PyRational {
            inner: self.inner.derivative(),
        }
    }

    #[pyo3(signature = (zeta, precision = DEFAULT_PRECISION))]
    fn __call__(&self, zeta: Complex64, precision: u32) -> PyResult<Complex64> {
        let z = BigComplex::from_f64(precision, zeta.re, zeta.im);
        let (re, im) = self.inner.eval_at(&z).map_err(to_py)?.to_f64();
        Ok(Complex64::new(re, im))
    }

    /// Leading terms of the expansion at `zeta = inf` as `(exponent, re, im)`.
    fn expand_at_infinity(&self, terms: usize) -> Vec<(i64, String, String)> {
        self.inner
            .expand_at_infinity(terms)
            .iter()
            .map(|(k, c)| {
                let (re, im) = coeff_pair(c);
                (*k, re, im)
            })
            .collect()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RationalFunction({})", self.inner)
    }
}

fn terms(p: &exactfield::LaurentPolynomial) -> Vec<(i64, String, String)> {
    p.terms()
        .iter()
        .map(|(k, c)| {
            let (re, im) = coeff_pair(c);
            (*k, re, im)
        })
        .collect()
}

/// One member of the lattice: `u` and the weighted potentials `E, P, Q`.
#[pyclass(name = "PotentialState", frozen)]
#[derive(Clone)]
struct PyState {
    inner: backlund::PotentialState,
}

#[pymethods]
impl PyState {
    #[getter]
    fn n(&self) -> i64 {
        self.inner.n
    }

    #[getter]
    fn u(&self) -> PyRational {
        PyRational {
            inner: self.inner.u.value.clone(),
        }
    }

    /// `(weight, value)` of a component named `u`, `E`, `P` or `Q`.
    fn component(&self, name: &str) -> PyResult<(i64, PyRational)> {
        let c: Component = name.parse().map_err(to_py)?;
        let w = self.inner.component(c);
        Ok((
            w.weight,
            PyRational {
                inner: w.value.clone(),
            },
        ))
    }

    fn step_up(&self) -> PyResult<Self> {
        Ok(PyState {
            inner: self.inner.step_up().map_err(to_py)?,
        })
    }

    fn step_down(&self) -> PyResult<Self> {
        Ok(PyState {
            inner: self.inner.step_down().map_err(to_py)?,
        })
    }

    /// Copy with one added to the named component.
    fn perturbed(&self, name: &str) -> PyResult<Self> {
        let c: Component = name.parse().map_err(to_py)?;
        Ok(PyState {
            inner: self.inner.perturbed(c),
        })
    }

    /// `[(identity, passed)]` for every exact check.
    fn validate(&self) -> Vec<(&'static str, bool)> {
        backlund::validate_state(&self.inner)
            .into_iter()
            .map(|c| (c.identity, c.passed))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "PotentialState(n={}, u={})",
            self.inner.n, self.inner.u.value
        )
    }
}

/// Memoized lattice of solutions, `|n| <= max_index`.
#[pyclass(name = "Lattice")]
struct PyLattice {
    inner: backlund::Lattice,
}

#[pymethods]
impl PyLattice {
    #[new]
    #[pyo3(signature = (max_index = backlund::DEFAULT_MAX_INDEX))]
    fn new(max_index: i64) -> Self {
        PyLattice {
            inner: backlund::Lattice::new(max_index),
        }
    }

    #[getter]
    fn max_index(&self) -> i64 {
        self.inner.max_index()
    }

    fn solution(&mut self, py: Python<'_>, n: i64) -> PyResult<PyState> {
        let inner = py
            .allow_threads(|| self.inner.solution(n).cloned())
            .map_err(to_py)?;
        Ok(PyState { inner })
    }

    /// Coefficients of `R_0..=R_n_max` as lists of `(exponent, re, im)`.
    fn ohyama(
        &mut self,
        py: Python<'_>,
        n_max: usize,
    ) -> PyResult<Vec<Vec<(i64, String, String)>>> {
        let seq = py
            .allow_threads(|| ohyama::ohyama_sequence(&mut self.inner, n_max))
            .map_err(to_py)?;
        Ok(seq.polynomials.iter().map(terms).collect())
    }

    /// Zeros of `R_n` as `(zeta_roots, Y_roots)`, `Y = zeta / sqrt(n)`.
    #[pyo3(signature = (n, precision = DEFAULT_PRECISION))]
    fn ohyama_roots(
        &mut self,
        py: Python<'_>,
        n: usize,
        precision: u32,
    ) -> PyResult<(Vec<Complex64>, Vec<Complex64>)> {
        let map = py
            .allow_threads(|| {
                let seq = ohyama::ohyama_sequence(&mut self.inner, n.max(2))?;
                ohyama::root_map(&seq, n, precision)
            })
            .map_err(to_py)?;
        let c = |v: &Vec<(f64, f64)>| v.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
        Ok((c(&map.roots), c(&map.scaled_roots)))
    }

    /// Rows `(n, exact, asymptotic, abs_error)` at real `y` or at `Y = i t`.
    #[pyo3(signature = (n_list, y = None, t = None, precision = DEFAULT_PRECISION))]
    fn compare(
        &mut self,
        py: Python<'_>,
        n_list: Vec<i64>,
        y: Option<f64>,
        t: Option<f64>,
        precision: u32,
    ) -> PyResult<Vec<(i64, Complex64, Complex64, f64)>> {
        let point = match (y, t) {
            (Some(y), None) => ComparePoint::Real(y),
            (None, Some(t)) => ComparePoint::Imaginary(t),
            _ => return Err(PyValueError::new_err("give exactly one of y or t")),
        };
        let table = py
            .allow_threads(|| {
                asym::compare_exact_vs_asymptotic(&mut self.inner, point, &n_list, precision)
            })
            .map_err(to_py)?;
        Ok(table
            .rows
            .iter()
            .map(|r| (r.n, r.exact, r.asymptotic, r.abs_error))
            .collect())
    }
}

/// `(s, d, c)` of the degenerate spectral curve at real `y > 0`.
#[pyfunction]
fn spectral(y: f64) -> PyResult<(f64, f64, f64)> {
    let sd = asym::spectral(y).map_err(to_py)?;
    Ok((sd.s, sd.d, sd.c))
}

#[pyfunction]
#[pyo3(signature = (tol = 1e-10))]
fn critical_y(tol: f64) -> PyResult<f64> {
    asym::critical_y(tol).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (s, nodes = asym::DEFAULT_NODES))]
fn l_of_s(s: Complex64, nodes: usize) -> PyResult<f64> {
    asym::l_of_s(s, nodes).map_err(to_py)
}

#[pyfunction]
fn s_of_y(y: Complex64) -> PyResult<Complex64> {
    asym::s_of_y(y).map_err(to_py)
}

#[pyfunction]
fn equilibrium_u(y: Complex64) -> PyResult<Complex64> {
    asym::equilibrium_u_complex(y).map_err(to_py)
}

type Polyline = Vec<(f64, f64)>;

/// Segments `(kind, [(re, im), ...])` and the four corner points.
#[pyfunction]
#[pyo3(signature = (resolution = 128, nodes = asym::DEFAULT_NODES))]
fn boundary(
    py: Python<'_>,
    resolution: usize,
    nodes: usize,
) -> PyResult<(Vec<(String, Polyline)>, Polyline)> {
    let curve = py
        .allow_threads(|| asym::boundary_curve(resolution, nodes))
        .map_err(to_py)?;
    let segs = curve
        .segments
        .iter()
        .map(|s| (s.kind.to_string(), s.points.clone()))
        .collect();
    Ok((segs, curve.corner_points.to_vec()))
}

#[pymodule]
fn d7py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRational>()?;
    m.add_class::<PyState>()?;
    m.add_class::<PyLattice>()?;
    m.add_function(wrap_pyfunction!(spectral, m)?)?;
    m.add_function(wrap_pyfunction!(critical_y, m)?)?;
    m.add_function(wrap_pyfunction!(l_of_s, m)?)?;
    m.add_function(wrap_pyfunction!(s_of_y, m)?)?;
    m.add_function(wrap_pyfunction!(equilibrium_u, m)?)?;
    m.add_function(wrap_pyfunction!(boundary, m)?)?;
    m.add("CORNER_RADIUS", asym::corner_radius())?;
    m.add(
        "SEGMENT_KINDS",
        [
            SegmentKind::CurvedArc,
            SegmentKind::BranchCutEdge,
            SegmentKind::PhantomUnboundedArc,
        ]
        .map(|k| k.as_str()),
    )?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
