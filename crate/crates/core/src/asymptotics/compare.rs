use num_complex::Complex64;
use rayon::prelude::*;

use super::branch::equilibrium_u_complex;
use super::cubic::equilibrium_u_real;
use super::spectral::critical_y;
use crate::backlund::Lattice;
use crate::error::{Error, Result};
use crate::exactfield::BigComplex;

/// Where the scaled solution is compared with its limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ComparePoint {
    /// Real `y = Y³`, which must exceed the critical value.
    Real(f64),
    /// `Y = i·t` on the imaginary axis.
    Imaginary(f64),
}

impl ComparePoint {
    /// The scaled variable `Y`.
    pub fn big_y(self) -> Complex64 {
        match self {
            ComparePoint::Real(y) => Complex64::new(y.cbrt(), 0.0),
            ComparePoint::Imaginary(t) => Complex64::new(0.0, t),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompareRow {
    pub n: i64,
    /// `n^{-1/2} u_n(n^{1/2} Y)`.
    pub exact: Complex64,
    pub asymptotic: Complex64,
    pub abs_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompareTable {
    pub point: ComparePoint,
    pub rows: Vec<CompareRow>,
}

/// Tolerance used when locating the critical value for the real-axis check.
const CRITICAL_TOL: f64 = 1e-12;

pub fn compare_exact_vs_asymptotic(
    lattice: &mut Lattice,
    point: ComparePoint,
    ns: &[i64],
    precision: u32,
) -> Result<CompareTable> {
    let asymptotic = match point {
        ComparePoint::Real(y) => {
            let yc = critical_y(CRITICAL_TOL)?;
            if y.is_nan() || y <= yc {
                return Err(Error::Domain(format!(
                    "y = {y} is sub-critical (y_c = {yc:.10}); the limit only holds for y > y_c"
                )));
            }
            Complex64::new(equilibrium_u_real(y), 0.0)
        }
        ComparePoint::Imaginary(t) => {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::Domain(format!(
                    "imaginary-axis point needs t > 0, got {t}"
                )));
            }
            equilibrium_u_complex(point.big_y())?
        }
    };
    if let Some(&bad) = ns.iter().find(|&&n| n < 1) {
        return Err(Error::Domain(format!("comparison needs n >= 1, got {bad}")));
    }
    let mut states = Vec::with_capacity(ns.len());
    for &n in ns {
        states.push(lattice.solution(n)?.u.value.clone());
    }
    let y = point.big_y();
    let rows = ns
        .par_iter()
        .zip(states.par_iter())
        .map(|(&n, u)| {
            let root = (n as f64).sqrt();
            let z = BigComplex::from_f64(precision, root * y.re, root * y.im);
            let (re, im) = u.eval_at(&z)?.to_f64();
            let exact = Complex64::new(re, im) / root;
            Ok(CompareRow {
                n,
                exact,
                asymptotic,
                abs_error: (exact - asymptotic).norm(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CompareTable { point, rows })
}
