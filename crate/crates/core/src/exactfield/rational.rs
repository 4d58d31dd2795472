use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::bigcomplex::{BigComplex, Evaluation};
use super::gaussian::GaussianRational;
use super::laurent::LaurentPolynomial;
use crate::error::{Error, Result};

/// Quotient `num / den` of polynomials in `ζ` over `Q(i)`.
///
/// Canonical form: both parts are ordinary polynomials, they are coprime and
/// `den` is monic, so derived equality is value equality. Powers of `ζ` in the
/// denominator are how negative exponents are represented.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPolynomial,
    den: LaurentPolynomial,
}

impl RationalFunction {
    /// Brings `num / den` (arbitrary Laurent polynomials) to canonical form.
    pub fn new(num: LaurentPolynomial, den: LaurentPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: LaurentPolynomial, den: LaurentPolynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let m = num.low_exponent().unwrap().min(den.low_exponent().unwrap());
        let num = num.shift(-m);
        let den = den.shift(-m);
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.exact_divide(&g).expect("gcd divides numerator"),
                den.exact_divide(&g).expect("gcd divides denominator"),
            )
        };
        Self::scaled_monic(num, den)
    }

    /// Makes `den` monic; the caller guarantees coprime ordinary parts.
    fn scaled_monic(num: LaurentPolynomial, den: LaurentPolynomial) -> Self {
        let lc = den.leading_coeff();
        if lc == GaussianRational::one() {
            return RationalFunction { num, den };
        }
        let inv = lc.inv().expect("nonzero leading coefficient");
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: LaurentPolynomial::zero(),
            den: LaurentPolynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        RationalFunction {
            num: LaurentPolynomial::constant(c),
            den: LaurentPolynomial::one(),
        }
    }

    pub fn zeta() -> Self {
        Self::from(LaurentPolynomial::zeta())
    }

    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPolynomial {
        &self.den
    }

    pub fn into_parts(self) -> (LaurentPolynomial, LaurentPolynomial) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_constant() && self.num.is_constant()
    }

    /// The constant value, when `self` is constant.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// True when every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.num.is_real() && self.den.is_real()
    }

    /// The polynomial `self`, if the denominator is a power of `ζ`.
    pub fn as_laurent(&self) -> Option<LaurentPolynomial> {
        let terms = self.den.terms();
        (terms.len() == 1).then(|| self.num.shift(-terms[0].0))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::scaled_monic(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Multiplies by `ζ^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        // only the ζ-parts of num and den can interact
        let zn = self.num.low_exponent().unwrap();
        let zd = self.den.low_exponent().unwrap();
        let e = zn - zd + k;
        let num = self.num.shift(-zn + e.max(0));
        let den = self.den.shift(-zd + (-e).max(0));
        RationalFunction { num, den }
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        // num^k and den^k stay coprime and den^k stays monic
        Ok(RationalFunction {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// `d/dζ`.
    pub fn derivative(&self) -> Self {
        if self.is_constant() {
            return Self::zero();
        }
        let n1 = self.num.derivative();
        if self.den.is_constant() {
            return RationalFunction {
                num: n1,
                den: self.den.clone(),
            };
        }
        // (N'D - ND')/D^2 = (N'(D/g) - N(D'/g)) / (D (D/g)), g = gcd(D, D')
        let d1 = self.den.derivative();
        let g = self.den.gcd(&d1);
        let dg = self.den.exact_divide(&g).unwrap();
        let d1g = d1.exact_divide(&g).unwrap();
        let top = &(&n1 * &dg) - &(&self.num * &d1g);
        Self::normalized(top, &self.den * &dg)
    }

    /// Substitutes `ζ -> -ζ`.
    pub fn reflect(&self) -> Self {
        Self::scaled_monic(self.num.reflect(), self.den.reflect())
    }

    /// Conjugates every coefficient.
    pub fn conj(&self) -> Self {
        RationalFunction {
            num: self.num.conj(),
            den: self.den.conj(),
        }
    }

    /// Evaluates at `z` in the precision of `z`.
    ///
    /// Fails with [`Error::Pole`] when the denominator cannot be told apart
    /// from zero at that precision.
    pub fn eval_at(&self, z: &BigComplex) -> Result<Evaluation> {
        let n = self.num.eval_big(z);
        let d = self.den.eval_big(z);
        let dabs = d.value.abs().to_f64();
        if dabs <= d.error_bound || d.value.is_zero() {
            let (re, im) = z.to_f64();
            return Err(Error::Pole { re, im });
        }
        let value = n.value.div(&d.value).unwrap();
        let vabs = value.abs().to_f64();
        let error_bound = (n.error_bound + vabs * d.error_bound) / (dabs - d.error_bound);
        Ok(Evaluation { value, error_bound })
    }

    /// Evaluates in `f64` via a `prec`-bit intermediate.
    pub fn eval_f64(&self, re: f64, im: f64, prec: u32) -> Result<(f64, f64)> {
        Ok(self.eval_at(&BigComplex::from_f64(prec, re, im))?.to_f64())
    }

    /// Laurent expansion at `ζ = ∞`: the nonzero coefficients among the
    /// `terms` exponents `k, k-1, .., k-terms+1`, where `k = deg num - deg den`.
    pub fn expand_at_infinity(&self, terms: usize) -> Vec<(i64, GaussianRational)> {
        if self.is_zero() || terms == 0 {
            return Vec::new();
        }
        let dn = self.num.degree().unwrap() as i64;
        let dd = self.den.degree().unwrap() as i64;
        // With t = 1/ζ: num = ζ^dn A(t), den = ζ^dd B(t), B(0) = 1.
        let a: Vec<GaussianRational> = (0..terms as i64).map(|j| self.num.coeff(dn - j)).collect();
        let b: Vec<GaussianRational> = (0..terms as i64).map(|j| self.den.coeff(dd - j)).collect();
        let mut c: Vec<GaussianRational> = Vec::with_capacity(terms);
        for j in 0..terms {
            let mut acc = a[j].clone();
            for i in 1..=j {
                if !b[i].is_zero() && !c[j - i].is_zero() {
                    acc -= &(&b[i] * &c[j - i]);
                }
            }
            c.push(acc);
        }
        c.into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (dn - dd - j as i64, v))
            .collect()
    }
}

impl From<LaurentPolynomial> for RationalFunction {
    fn from(p: LaurentPolynomial) -> Self {
        if p.is_zero() {
            return Self::zero();
        }
        let low = p.low_exponent().unwrap();
        if low >= 0 {
            RationalFunction {
                num: p,
                den: LaurentPolynomial::one(),
            }
        } else {
            RationalFunction {
                num: p.shift(-low),
                den: LaurentPolynomial::monomial(-low, GaussianRational::one()),
            }
        }
    }
}

impl From<GaussianRational> for RationalFunction {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for RationalFunction {
    fn from(c: i64) -> Self {
        Self::constant(GaussianRational::from(c))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPolynomial::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

fn add_sub(a: &RationalFunction, b: &RationalFunction, negate: bool) -> RationalFunction {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate { -b } else { b.clone() };
    }
    let combine =
        |x: LaurentPolynomial, y: LaurentPolynomial| if negate { &x - &y } else { &x + &y };
    if a.den == b.den {
        return RationalFunction::normalized(combine(a.num.clone(), b.num.clone()), a.den.clone());
    }
    let g = a.den.gcd(&b.den);
    if g.is_constant() {
        let num = combine(&a.num * &b.den, &b.num * &a.den);
        if num.is_zero() {
            return RationalFunction::zero();
        }
        // already coprime: a common factor would have to divide a.den or b.den
        return RationalFunction::scaled_monic(num, &a.den * &b.den);
    }
    let ag = a.den.exact_divide(&g).unwrap();
    let bg = b.den.exact_divide(&g).unwrap();
    let num = combine(&a.num * &bg, &b.num * &ag);
    if num.is_zero() {
        return RationalFunction::zero();
    }
    // only factors of g can be shared with num
    let h = num.gcd(&g);
    let den = &ag * &b.den;
    if h.is_constant() {
        RationalFunction::scaled_monic(num, den)
    } else {
        RationalFunction::scaled_monic(num.exact_divide(&h).unwrap(), den.exact_divide(&h).unwrap())
    }
}

fn mul(a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
    if a.is_zero() || b.is_zero() {
        return RationalFunction::zero();
    }
    let cancel = |n: &LaurentPolynomial, d: &LaurentPolynomial| {
        if d.is_constant() || n.is_constant() {
            return (n.clone(), d.clone());
        }
        let g = n.gcd(d);
        if g.is_constant() {
            (n.clone(), d.clone())
        } else {
            (n.exact_divide(&g).unwrap(), d.exact_divide(&g).unwrap())
        }
    };
    let (an, bd) = cancel(&a.num, &b.den);
    let (bn, ad) = cancel(&b.num, &a.den);
    RationalFunction::scaled_monic(&an * &bn, &ad * &bd)
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        add_sub(self, rhs, false)
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        add_sub(self, rhs, true)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        mul(self, rhs)
    }
}

/// Panics on division by zero; use [`RationalFunction::checked_div`] to
/// recover instead.
impl Div<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs)
            .expect("division by the zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $method:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$method(rhs)
            }
        }
        impl $tr<RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                self.$method(&rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::ratio(n, d)
    }

    fn lp(low: i64, c: &[i64]) -> LaurentPolynomial {
        LaurentPolynomial::from_integers(low, c)
    }

    fn u1() -> RationalFunction {
        RationalFunction::new(lp(0, &[-1, 0, 3]), lp(1, &[6])).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let r = RationalFunction::new(lp(1, &[-1, 1]), lp(1, &[1])).unwrap();
        assert_eq!(r, RationalFunction::from(lp(0, &[-1, 1])));
        let r = RationalFunction::new(lp(1, &[2]), lp(0, &[2])).unwrap();
        assert_eq!(r, RationalFunction::zeta());
        assert_eq!(
            RationalFunction::new(lp(0, &[1]), LaurentPolynomial::zero()),
            Err(Error::ZeroDenominator)
        );
        let u = u1();
        assert_eq!(u.denominator(), &LaurentPolynomial::zeta());
        assert_eq!(
            u.numerator(),
            &LaurentPolynomial::from_coeffs(0, &[q(-1, 6), q(0, 1), q(1, 2)])
        );
    }

    #[test]
    fn field_examples() {
        let half = RationalFunction::zeta().scale(&q(1, 2));
        assert!((&half + &(-&half)).is_zero());
        let two_over = RationalFunction::new(lp(0, &[2]), lp(1, &[1])).unwrap();
        assert_eq!(&half * &two_over, RationalFunction::one());
        let zm1 = RationalFunction::from(lp(0, &[-1, 1]));
        let inv = RationalFunction::one().checked_div(&zm1).unwrap();
        assert_eq!(&inv * &zm1, RationalFunction::one());
        assert_eq!(
            zm1.checked_div(&RationalFunction::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn evaluation() {
        let u0 = RationalFunction::zeta().scale(&q(1, 2));
        assert_eq!(u0.eval_f64(2.0, 0.0, 256).unwrap(), (1.0, 0.0));
        let (re, im) = u1().eval_f64(1.0, 0.0, 256).unwrap();
        assert!((re - 1.0 / 3.0).abs() < 1e-15 && im == 0.0);
        let inv = RationalFunction::from(LaurentPolynomial::monomial(-1, q(1, 1)));
        assert!(matches!(
            inv.eval_f64(0.0, 0.0, 256),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn expansion() {
        let u0 = RationalFunction::zeta().scale(&q(1, 2));
        assert_eq!(u0.expand_at_infinity(3), vec![(1, q(1, 2))]);
        assert_eq!(
            u1().expand_at_infinity(3),
            vec![(1, q(1, 2)), (-1, q(-1, 6))]
        );
        let g = RationalFunction::one()
            .checked_div(&RationalFunction::from(lp(0, &[-1, 1])))
            .unwrap();
        assert_eq!(
            g.expand_at_infinity(3),
            vec![(-1, q(1, 1)), (-2, q(1, 1)), (-3, q(1, 1))]
        );
    }

    #[test]
    fn derivative_and_shift() {
        // d/dζ (1/(ζ-1)) = -1/(ζ-1)^2
        let g = RationalFunction::one()
            .checked_div(&RationalFunction::from(lp(0, &[-1, 1])))
            .unwrap();
        let expect = RationalFunction::new(lp(0, &[-1]), lp(0, &[1, -2, 1])).unwrap();
        assert_eq!(g.derivative(), expect);
        assert_eq!(u1().shift(1), &u1() * &RationalFunction::zeta());
        assert_eq!(
            u1().shift(-3),
            &u1() * &RationalFunction::zeta().pow(-3).unwrap()
        );
    }
}
