use num_complex::Complex64;

use crate::error::{Error, Result};

/// Degenerate spectral curve `-μ³ + μ² + cμ - y²/4 = -(μ - s)(μ - d)²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralData {
    pub y: f64,
    /// Simple root, negative for `y > 0`.
    pub s: f64,
    /// Double root.
    pub d: f64,
    pub c: f64,
}

impl SpectralData {
    /// Relative residuals of `2d + s = 1`, `d²s = -y²/4`, `d² + 2ds = -c`.
    pub fn residuals(&self) -> [f64; 3] {
        let (y, s, d, c) = (self.y, self.s, self.d, self.c);
        let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
        [
            rel(2.0 * d + s, 1.0),
            rel(d * d * s, -y * y / 4.0),
            rel(d * d + 2.0 * d * s, -c),
        ]
    }

    /// `½(-s)^{1/2}`, the leading-order value of `n^{-1/2} u_n`.
    pub fn u_limit(&self) -> f64 {
        0.5 * (-self.s).sqrt()
    }
}

/// The negative root of `s(s-1)² = -y²` and the induced `d`, `c`.
pub fn spectral(y: f64) -> Result<SpectralData> {
    if !(y > 0.0 && y.is_finite()) {
        return Err(Error::Domain(format!("spectral data needs y > 0, got {y}")));
    }
    let f = |s: f64| s * (s - 1.0) * (s - 1.0) + y * y;
    let df = |s: f64| (3.0 * s - 4.0) * s + 1.0;
    let (mut lo, mut hi) = (-(y.powf(2.0 / 3.0) + 1.0), 0.0);
    // f is increasing on s < 1/3
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut s = 0.5 * (lo + hi);
    for _ in 0..3 {
        let step = f(s) / df(s);
        if step.is_finite() && s - step < 0.0 {
            s -= step;
        }
    }
    let d = (1.0 - s) / 2.0;
    Ok(SpectralData {
        y,
        s,
        d,
        c: -(d * d + 2.0 * d * s),
    })
}

/// `(-64(27y²+4), y²(27y²+4)³)`: discriminants of the equilibrium cubic and
/// of the `s`-cubic.
pub fn discriminant_checks(y: f64) -> (f64, f64) {
    let t = 27.0 * y * y + 4.0;
    (-64.0 * t, y * y * t * t * t)
}

/// `h(η)` with principal branches, off the cut `[is, 0]`.
pub fn h_eval(eta: Complex64, s: f64) -> Result<Complex64> {
    if eta.re == 0.0 && eta.im <= 0.0 && eta.im >= s {
        return Err(Error::BranchCut {
            what: "h",
            re: eta.re,
            im: eta.im,
        });
    }
    let m = Complex64::new(0.0, -1.0) * eta;
    let a = (m - s).sqrt();
    let b = m.sqrt();
    Ok((m - s + 1.0) * a / b + 0.5 * ((a - b) / (a + b)).ln())
}

/// `∂h/∂η = -(η - id)(-iη)^{-3/2}(-iη - s)^{1/2}` with `d = (1-s)/2`.
pub fn h_prime(eta: Complex64, s: f64) -> Complex64 {
    let d = (1.0 - s) / 2.0;
    let m = Complex64::new(0.0, -1.0) * eta;
    -(eta - Complex64::new(0.0, d)) * m.powf(-1.5) * (m - s).sqrt()
}

/// `Re h(i·d(y), y)`, positive above the critical value.
pub fn re_h_at_double_root(y: f64) -> Result<f64> {
    let sd = spectral(y)?;
    Ok(h_eval(Complex64::new(0.0, sd.d), sd.s)?.re)
}

/// `1 - 3s/2 + ½ ln(-s/4)`.
pub fn g0_of_y(y: f64) -> Result<f64> {
    let s = spectral(y)?.s;
    Ok(1.0 - 1.5 * s + 0.5 * (-s / 4.0).ln())
}

/// Coefficient of `(-iη)^{1/2}` in `g` near the origin: `-(1+3s)/(2(-s)^{1/2})`.
pub fn g_origin_coeff(y: f64) -> Result<f64> {
    let s = spectral(y)?.s;
    Ok(origin_coeff_of_s(s))
}

pub fn origin_coeff_of_s(s: f64) -> f64 {
    -(1.0 + 3.0 * s) / (2.0 * (-s).sqrt())
}

/// Lower end of the bracket searched by [`critical_y`].
pub const CRITICAL_BRACKET: (f64, f64) = (0.1, 1.0);

/// Root of `y ↦ Re h(i·d(y), y)` by bisection.
pub fn critical_y(tol: f64) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let (mut lo, mut hi) = CRITICAL_BRACKET;
    let (flo, fhi) = (re_h_at_double_root(lo)?, re_h_at_double_root(hi)?);
    if !(flo < 0.0 && fhi > 0.0) {
        return Err(Error::Numerical(format!(
            "no sign change of Re h(id, y) on [{lo}, {hi}]: {flo:e}, {fhi:e}"
        )));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if re_h_at_double_root(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Invariants of the Weierstraß equation for a non-equilibrium solution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeierstrassInvariants {
    pub y: f64,
    pub ec: f64,
    pub g2: f64,
    pub g3: f64,
}

pub fn weierstrass_invariants(y: f64, ec: f64) -> Result<WeierstrassInvariants> {
    if y == 0.0 {
        return Err(Error::Domain("invariants need y != 0".into()));
    }
    let y2 = y * y;
    Ok(WeierstrassInvariants {
        y,
        ec,
        g2: 16.0 / y2 + ec * ec / 3.0,
        g3: -16.0 / y2 - 8.0 * ec / (3.0 * y2) - ec * ec * ec / 27.0,
    })
}

/// Integration constant `E` matched to the spectral curve: `y²E = -8c`.
pub fn ec_from_spectral(sd: &SpectralData) -> f64 {
    -8.0 * sd.c / (sd.y * sd.y)
}

/// `16U³/y + 2E U² - 4U/y + 1` and its `U`-derivative.
pub fn energy_cubic(y: f64, ec: f64, u: f64) -> (f64, f64) {
    let v = 16.0 * u * u * u / y + 2.0 * ec * u * u - 4.0 * u / y + 1.0;
    let dv = 48.0 * u * u / y + 4.0 * ec * u - 4.0 / y;
    (v, dv)
}
