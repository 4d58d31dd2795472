use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// Exact complex number `re + im*i` with rational parts.
///
/// Both parts are `rug::Rational`, which is always kept in lowest terms with
/// a positive denominator, so structural equality is numeric equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    re: Rational,
    im: Rational,
}

impl GaussianRational {
    pub fn new(re: impl Into<Rational>, im: impl Into<Rational>) -> Self {
        GaussianRational {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn real(re: impl Into<Rational>) -> Self {
        GaussianRational {
            re: re.into(),
            im: Rational::new(),
        }
    }

    /// `num/den` as a real Gaussian rational. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(Rational::from((num, den)))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(1)
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.cmp0().is_eq() && self.im.cmp0().is_eq()
    }

    pub fn is_real(&self) -> bool {
        self.im.cmp0().is_eq()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: Rational::from(-&self.im),
        }
    }

    /// `|z|^2`.
    pub fn norm_sqr(&self) -> Rational {
        Rational::from(&self.re * &self.re) + Rational::from(&self.im * &self.im)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(GaussianRational {
            re: Rational::from(&self.re / &n),
            im: Rational::from(-&self.im) / n,
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Splits into `(p + q*i) / m` with integers `p, q` and `m > 0` minimal.
    pub(crate) fn to_integer_parts(&self) -> (Integer, Integer, Integer) {
        let m = self.re.denom().clone().lcm(self.im.denom());
        let p = self.re.numer() * Integer::from(&m / self.re.denom());
        let q = self.im.numer() * Integer::from(&m / self.im.denom());
        (p, q, m)
    }

    /// Approximate value as a pair of `f64`.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::real(v)
    }
}

impl From<Rational> for GaussianRational {
    fn from(v: Rational) -> Self {
        Self::real(v)
    }
}

impl From<Integer> for GaussianRational {
    fn from(v: Integer) -> Self {
        Self::real(v)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.cmp0().is_eq(), self.im.cmp0().is_eq()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                if self.im.cmp0().is_lt() {
                    write!(f, "({} - {}*i)", self.re, Rational::from(-&self.im))
                } else {
                    write!(f, "({} + {}*i)", self.re, self.im)
                }
            }
        }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -self.clone()
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.is_real() && rhs.is_real() {
            return GaussianRational::real(Rational::from(&self.re * &rhs.re));
        }
        let re = Rational::from(&self.re * &rhs.re) - Rational::from(&self.im * &rhs.im);
        let im = Rational::from(&self.re * &rhs.im) + Rational::from(&self.im * &rhs.re);
        GaussianRational { re, im }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $assign:ident) => {
        impl $tr<&GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
    };
}

forward_binop!(Add, add, add_assign);
forward_binop!(Sub, sub, sub_assign);

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
        impl $tr<GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                self.$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from(-1));
    }

    #[test]
    fn inverse_round_trip() {
        let z = GaussianRational::new(Rational::from((3, 4)), Rational::from((-2, 5)));
        let w = z.inv().unwrap();
        assert_eq!(&z * &w, GaussianRational::one());
        assert!(GaussianRational::zero().inv().is_err());
    }

    #[test]
    fn integer_parts() {
        let z = GaussianRational::new(Rational::from((1, 6)), Rational::from((3, 4)));
        let (p, q, m) = z.to_integer_parts();
        assert_eq!(
            (p, q, m),
            (Integer::from(2), Integer::from(9), Integer::from(12))
        );
    }

    #[test]
    fn display() {
        assert_eq!(GaussianRational::ratio(-1, 6).to_string(), "-1/6");
        assert_eq!(GaussianRational::i().to_string(), "1*i");
        assert_eq!(GaussianRational::new(1, -2).to_string(), "(1 - 2*i)");
    }
}
