use std::cmp::Ordering;
use std::fmt;

use rug::ops::Pow;
use rug::{Float, Integer};

use super::gaussian::GaussianRational;
use super::laurent::LaurentPolynomial;

/// Default working precision for high-precision evaluation and root finding.
pub const DEFAULT_PRECISION: u32 = 256;

/// Complex number with MPFR real and imaginary parts at a fixed precision.
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    pub fn zero(prec: u32) -> Self {
        BigComplex {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        BigComplex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn from_gaussian(prec: u32, c: &GaussianRational) -> Self {
        BigComplex {
            re: Float::with_val(prec, c.re()),
            im: Float::with_val(prec, c.im()),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec();
        BigComplex {
            re: Float::with_val(p, &self.re + &o.re),
            im: Float::with_val(p, &self.im + &o.im),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.prec();
        BigComplex {
            re: Float::with_val(p, &self.re - &o.re),
            im: Float::with_val(p, &self.im - &o.im),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec();
        let rr = Float::with_val(p, &self.re * &o.re);
        let ii = Float::with_val(p, &self.im * &o.im);
        let ri = Float::with_val(p, &self.re * &o.im);
        let ir = Float::with_val(p, &self.im * &o.re);
        BigComplex {
            re: rr - ii,
            im: ri + ir,
        }
    }

    pub fn scale(&self, s: &Float) -> Self {
        let p = self.prec();
        BigComplex {
            re: Float::with_val(p, &self.re * s),
            im: Float::with_val(p, &self.im * s),
        }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// `None` when `o` is exactly zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        let p = self.prec();
        let n = o.norm_sqr();
        let re = Float::with_val(p, &self.re * &o.re) + Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.im * &o.re) - Float::with_val(p, &self.re * &o.im);
        Some(BigComplex {
            re: re / &n,
            im: im / n,
        })
    }

    pub fn recip(&self) -> Option<Self> {
        let one = BigComplex::from_f64(self.prec(), 1.0, 0.0);
        one.div(self)
    }

    /// Lexicographic `(re, im)` ordering used to report roots deterministically.
    pub fn lex_cmp(&self, o: &Self) -> Ordering {
        self.re
            .partial_cmp(&o.re)
            .unwrap_or(Ordering::Equal)
            .then(self.im.partial_cmp(&o.im).unwrap_or(Ordering::Equal))
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        write!(f, "{re:e}{im:+e}i")
    }
}

/// Value of a polynomial or rational function with an a-priori bound on the
/// absolute rounding error.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub value: BigComplex,
    pub error_bound: f64,
}

impl Evaluation {
    pub fn to_f64(&self) -> (f64, f64) {
        self.value.to_f64()
    }
}

fn unit_roundoff(prec: u32) -> f64 {
    (-(prec as f64)).exp2()
}

fn int_to_float(prec: u32, c: &Integer) -> Float {
    Float::with_val(prec, c)
}

impl LaurentPolynomial {
    /// Horner evaluation at `z` in the precision of `z`.
    ///
    /// The bound is the usual running-error estimate
    /// `(4d + 8)·u·Σ|c_k||z|^k` with `u = 2^-prec`.
    pub fn eval_big(&self, z: &BigComplex) -> Evaluation {
        let prec = z.prec();
        if self.is_zero() {
            return Evaluation {
                value: BigComplex::zero(prec),
                error_bound: 0.0,
            };
        }
        let (re, im) = self.numerators();
        let n = re.len();
        let zabs = z.abs();
        let mut acc = BigComplex::zero(prec);
        let mut mag = Float::new(prec);
        for j in (0..n).rev() {
            acc = acc.mul(z);
            acc.re += int_to_float(prec, &re[j]);
            if !im.is_empty() {
                acc.im += int_to_float(prec, &im[j]);
            }
            mag *= &zabs;
            let cj = if im.is_empty() {
                Float::with_val(prec, Integer::from(re[j].abs_ref()))
            } else {
                Float::with_val(
                    prec,
                    int_to_float(prec, &re[j]).hypot_ref(&int_to_float(prec, &im[j])),
                )
            };
            mag += cj;
        }
        let low = self.low_exponent().unwrap();
        if low != 0 {
            let zp = pow_i(z, low.unsigned_abs());
            let zpabs = zabs.clone().pow(low as i32);
            acc = if low > 0 {
                acc.mul(&zp)
            } else {
                acc.div(&zp)
                    .unwrap_or_else(|| BigComplex::from_f64(prec, f64::INFINITY, 0.0))
            };
            mag *= zpabs;
        }
        let den = int_to_float(prec, self.common_denominator());
        let value = BigComplex {
            re: Float::with_val(prec, &acc.re / &den),
            im: Float::with_val(prec, &acc.im / &den),
        };
        let scale = Float::with_val(prec, &mag / &den).to_f64();
        let terms = (n as f64) + low.unsigned_abs() as f64;
        Evaluation {
            value,
            error_bound: (4.0 * terms + 8.0) * unit_roundoff(prec) * scale,
        }
    }

    /// `Σ |c_k| |z|^k`, the natural scale for residuals at `z`.
    pub fn magnitude_at(&self, z: &BigComplex) -> f64 {
        let zabs = z.abs();
        let prec = z.prec();
        let mut total = Float::new(prec);
        for (k, c) in self.terms() {
            let cabs = Float::with_val(prec, c.re()).hypot(&Float::with_val(prec, c.im()));
            total += cabs * zabs.clone().pow(k as i32);
        }
        total.to_f64()
    }
}

fn pow_i(z: &BigComplex, e: u64) -> BigComplex {
    let mut acc = BigComplex::from_f64(z.prec(), 1.0, 0.0);
    let mut base = z.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    acc
}
