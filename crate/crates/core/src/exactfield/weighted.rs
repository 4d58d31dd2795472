use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::gaussian::GaussianRational;
use super::rational::RationalFunction;
use crate::error::{Error, Result};

/// `R(ζ)·exp(3wζ²)` with `x = ζ³`, i.e. a rational function of `x^(1/3)`
/// times `exp(3w x^(2/3))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightedRational {
    pub weight: i64,
    pub value: RationalFunction,
}

impl WeightedRational {
    pub fn new(weight: i64, value: RationalFunction) -> Self {
        WeightedRational { weight, value }
    }

    /// Weight-zero element.
    pub fn plain(value: RationalFunction) -> Self {
        Self::new(0, value)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.check_weight(rhs)?;
        Ok(Self::new(self.weight, &self.value + &rhs.value))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_weight(rhs)?;
        Ok(Self::new(self.weight, &self.value - &rhs.value))
    }

    fn check_weight(&self, rhs: &Self) -> Result<()> {
        if self.weight == rhs.weight {
            Ok(())
        } else {
            Err(Error::WeightMismatch {
                left: self.weight,
                right: rhs.weight,
            })
        }
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(Self::new(-self.weight, self.value.inv()?))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(Self::new(
            self.weight - rhs.weight,
            self.value.checked_div(&rhs.value)?,
        ))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(self.weight, self.value.scale(c))
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        Ok(Self::new(self.weight * e as i64, self.value.pow(e)?))
    }

    /// `d/dx = (1/(3ζ²)) d/dζ`: value `(R' + 6wζR)/(3ζ²)`, same weight.
    pub fn d_dx(&self) -> Self {
        let mut top = self.value.derivative();
        if self.weight != 0 {
            let c = GaussianRational::from(6 * self.weight);
            top = &top + &self.value.shift(1).scale(&c);
        }
        Self::new(
            self.weight,
            top.shift(-2).scale(&GaussianRational::ratio(1, 3)),
        )
    }
}

impl From<RationalFunction> for WeightedRational {
    fn from(value: RationalFunction) -> Self {
        Self::plain(value)
    }
}

impl fmt::Debug for WeightedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightedRational(w={}, {})", self.weight, self.value)
    }
}

impl fmt::Display for WeightedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.weight == 0 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "[{}]*exp({}*z^2)", self.value, 3 * self.weight)
        }
    }
}

/// Panics on a weight mismatch, which is always a programming error; use
/// [`WeightedRational::checked_add`] to recover instead.
impl Add<&WeightedRational> for &WeightedRational {
    type Output = WeightedRational;
    fn add(self, rhs: &WeightedRational) -> WeightedRational {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

/// Panics on a weight mismatch.
impl Sub<&WeightedRational> for &WeightedRational {
    type Output = WeightedRational;
    fn sub(self, rhs: &WeightedRational) -> WeightedRational {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul<&WeightedRational> for &WeightedRational {
    type Output = WeightedRational;
    fn mul(self, rhs: &WeightedRational) -> WeightedRational {
        WeightedRational::new(self.weight + rhs.weight, &self.value * &rhs.value)
    }
}

/// Panics on division by zero.
impl Div<&WeightedRational> for &WeightedRational {
    type Output = WeightedRational;
    fn div(self, rhs: &WeightedRational) -> WeightedRational {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &WeightedRational {
    type Output = WeightedRational;
    fn neg(self) -> WeightedRational {
        WeightedRational::new(self.weight, -&self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::LaurentPolynomial;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::ratio(n, d)
    }

    #[test]
    fn derivative_examples() {
        let z = WeightedRational::plain(RationalFunction::zeta());
        let expect = RationalFunction::from(LaurentPolynomial::monomial(-2, q(1, 3)));
        assert_eq!(z.d_dx(), WeightedRational::plain(expect.clone()));

        let e = WeightedRational::new(1, RationalFunction::one());
        let two_over = RationalFunction::from(LaurentPolynomial::monomial(-1, q(2, 1)));
        assert_eq!(e.d_dx(), WeightedRational::new(1, two_over));

        let u0 = z.scale(&q(1, 2));
        assert_eq!(u0.d_dx().value, expect.scale(&q(1, 2)));
    }

    #[test]
    fn weight_mismatch_is_an_error() {
        let a = WeightedRational::new(1, RationalFunction::one());
        let b = WeightedRational::new(-1, RationalFunction::one());
        assert_eq!(
            a.checked_add(&b),
            Err(Error::WeightMismatch { left: 1, right: -1 })
        );
        assert_eq!((&a * &b).weight, 0);
        assert_eq!((&a / &b).weight, 2);
    }
}
