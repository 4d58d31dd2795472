use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};

use super::gaussian::GaussianRational;
use super::zpoly::{self, ZPoly};
use crate::error::{Error, Result};

/// Finite Laurent series `Σ c_k ζ^k` with Gaussian-rational coefficients.
///
/// Stored densely as integer numerators over one positive common
/// denominator: `c_{low+j} = (re[j] + i*im[j]) / den`. The representation is
/// canonical (no leading or trailing zero coefficient, numerators and `den`
/// jointly coprime, `im` empty when every coefficient is real), so derived
/// equality is value equality. The zero element has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    low: i64,
    re: Vec<Integer>,
    im: Vec<Integer>,
    den: Integer,
}

fn nz(c: &Integer) -> bool {
    c.cmp0().is_ne()
}

impl LaurentPolynomial {
    fn from_parts(
        mut low: i64,
        mut re: Vec<Integer>,
        mut im: Vec<Integer>,
        mut den: Integer,
    ) -> Self {
        assert!(den.cmp0().is_ne(), "zero common denominator");
        if im.iter().all(|c| !nz(c)) {
            im.clear();
        } else {
            let n = re.len().max(im.len());
            re.resize(n, Integer::new());
            im.resize(n, Integer::new());
        }
        let live = |k: usize| nz(&re[k]) || (!im.is_empty() && nz(&im[k]));
        let Some(first) = (0..re.len()).find(|&k| live(k)) else {
            return Self::zero();
        };
        let last = (0..re.len()).rev().find(|&k| live(k)).unwrap();
        re.truncate(last + 1);
        re.drain(..first);
        if !im.is_empty() {
            im.truncate(last + 1);
            im.drain(..first);
        }
        low += first as i64;

        let mut g = den.clone();
        for c in re.iter().chain(im.iter()) {
            if g == 1 {
                break;
            }
            g.gcd_mut(c);
        }
        if den.cmp0().is_lt() {
            g = -g;
        }
        if g != 1 {
            for c in re.iter_mut().chain(im.iter_mut()) {
                c.div_exact_mut(&g);
            }
            den.div_exact_mut(&g);
        }
        LaurentPolynomial { low, re, im, den }
    }

    pub fn zero() -> Self {
        LaurentPolynomial {
            low: 0,
            re: Vec::new(),
            im: Vec::new(),
            den: Integer::from(1),
        }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    /// The variable `ζ`.
    pub fn zeta() -> Self {
        Self::monomial(1, GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exponent: i64, c: GaussianRational) -> Self {
        let (p, q, m) = c.to_integer_parts();
        Self::from_parts(exponent, vec![p], vec![q], m)
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, GaussianRational)>,
    {
        terms
            .into_iter()
            .fold(Self::zero(), |acc, (k, c)| &acc + &Self::monomial(k, c))
    }

    /// Coefficients `coeffs[j]` of `ζ^(low + j)`.
    pub fn from_coeffs(low: i64, coeffs: &[GaussianRational]) -> Self {
        let mut den = Integer::from(1);
        for c in coeffs {
            den.lcm_mut(c.re().denom());
            den.lcm_mut(c.im().denom());
        }
        let scale = |r: &Rational| r.numer() * Integer::from(&den / r.denom());
        let re = coeffs.iter().map(|c| scale(c.re())).collect();
        let im = coeffs.iter().map(|c| scale(c.im())).collect();
        Self::from_parts(low, re, im, den)
    }

    /// Real polynomial from integer coefficients of `ζ^(low + j)`.
    pub fn from_integers(low: i64, coeffs: &[i64]) -> Self {
        let re = coeffs.iter().map(|&c| Integer::from(c)).collect();
        Self::from_parts(low, re, Vec::new(), Integer::from(1))
    }

    pub(crate) fn from_zpoly(low: i64, p: ZPoly) -> Self {
        Self::from_parts(low, p, Vec::new(), Integer::from(1))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_empty()
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn low_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn high_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.re.len() as i64 - 1)
    }

    /// Degree of an ordinary polynomial; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.high_exponent().map(|h| h.max(0) as usize)
    }

    /// True when no negative powers occur.
    pub fn is_polynomial(&self) -> bool {
        self.is_zero() || self.low >= 0
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.low == 0 && self.re.len() == 1)
    }

    fn coeff_at(&self, j: usize) -> GaussianRational {
        let re = Rational::from((self.re[j].clone(), self.den.clone()));
        let im = if self.im.is_empty() {
            Rational::new()
        } else {
            Rational::from((self.im[j].clone(), self.den.clone()))
        };
        GaussianRational::new(re, im)
    }

    pub fn coeff(&self, exponent: i64) -> GaussianRational {
        let j = exponent - self.low;
        if self.is_zero() || j < 0 || j as usize >= self.re.len() {
            return GaussianRational::zero();
        }
        self.coeff_at(j as usize)
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> Vec<(i64, GaussianRational)> {
        (0..self.re.len())
            .filter(|&j| nz(&self.re[j]) || (!self.im.is_empty() && nz(&self.im[j])))
            .map(|j| (self.low + j as i64, self.coeff_at(j)))
            .collect()
    }

    pub fn leading_coeff(&self) -> GaussianRational {
        match self.high_exponent() {
            Some(h) => self.coeff(h),
            None => GaussianRational::zero(),
        }
    }

    pub fn trailing_coeff(&self) -> GaussianRational {
        self.coeff(self.low)
    }

    /// Multiplies by `ζ^k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut out = self.clone();
        if !out.is_zero() {
            out.low += k;
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        let (p, q, m) = c.to_integer_parts();
        let n = self.re.len();
        let mut re = Vec::with_capacity(n);
        let mut im = Vec::with_capacity(n);
        for j in 0..n {
            let (a, b) = (&self.re[j], self.im.get(j));
            let mut r = Integer::from(a * &p);
            let mut s = Integer::from(a * &q);
            if let Some(b) = b {
                r -= b * &q;
                s += b * &p;
            }
            re.push(r);
            im.push(s);
        }
        Self::from_parts(self.low, re, im, Integer::from(&self.den * &m))
    }

    /// `d/dζ`.
    pub fn derivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let factor = |j: usize| Integer::from(self.low + j as i64);
        let re = (0..self.re.len())
            .map(|j| &self.re[j] * factor(j))
            .collect();
        let im = (0..self.im.len())
            .map(|j| &self.im[j] * factor(j))
            .collect();
        Self::from_parts(self.low - 1, re, im, self.den.clone())
    }

    /// Substitutes `ζ -> -ζ`.
    pub fn reflect(&self) -> Self {
        let mut out = self.clone();
        for (j, c) in out.re.iter_mut().enumerate() {
            if (self.low + j as i64).rem_euclid(2) == 1 {
                *c = Integer::from(-&*c);
            }
        }
        for (j, c) in out.im.iter_mut().enumerate() {
            if (self.low + j as i64).rem_euclid(2) == 1 {
                *c = Integer::from(-&*c);
            }
        }
        out
    }

    /// Complex conjugation of the coefficients.
    pub fn conj(&self) -> Self {
        let mut out = self.clone();
        for c in &mut out.im {
            *c = Integer::from(-&*c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub(crate) fn common_denominator(&self) -> &Integer {
        &self.den
    }

    pub(crate) fn numerators(&self) -> (&[Integer], &[Integer]) {
        (&self.re, &self.im)
    }

    /// Dense coefficient vector starting at `ζ^0`; requires `is_polynomial`.
    fn dense(&self) -> Vec<GaussianRational> {
        debug_assert!(self.is_polynomial());
        let Some(h) = self.high_exponent() else {
            return Vec::new();
        };
        (0..=h).map(|k| self.coeff(k)).collect()
    }

    /// Integer polynomial `R` (ascending from `ζ^low`) with `self = c*R` for
    /// some Gaussian scalar `c`, when such a real rotation exists.
    fn real_rotation(&self) -> Option<ZPoly> {
        if self.im.is_empty() {
            return Some(self.re.clone());
        }
        let k = (0..self.re.len()).find(|&k| nz(&self.re[k]) || nz(&self.im[k]))?;
        let (rk, ik) = (&self.re[k], &self.im[k]);
        let mut out = Vec::with_capacity(self.re.len());
        for (a, b) in self.re.iter().zip(&self.im) {
            if Integer::from(b * rk) != Integer::from(a * ik) {
                return None;
            }
            out.push(Integer::from(a * rk) + Integer::from(b * ik));
        }
        Some(out)
    }

    /// Monic greatest common divisor of two polynomials (nonnegative
    /// exponents). `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        assert!(
            self.is_polynomial() && other.is_polynomial(),
            "gcd requires ordinary polynomials"
        );
        if let (Some(a), Some(b)) = (self.real_rotation(), other.real_rotation()) {
            let pad = |low: i64, p: ZPoly| {
                let mut v = vec![Integer::new(); low as usize];
                v.extend(p);
                v
            };
            let g = zpoly::gcd(&pad(self.low, a), &pad(other.low, b));
            return Self::from_zpoly(0, g).monic();
        }
        euclid_gaussian(self.dense(), other.dense())
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.leading_coeff();
        if lc == GaussianRational::one() {
            return self.clone();
        }
        self.scale(&lc.inv().expect("nonzero leading coefficient"))
    }

    /// Exact quotient `self / divisor`, or [`Error::NotDivisible`].
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let low = self.low - divisor.low;
        if let Some(rot) = divisor.real_rotation() {
            let rot = zpoly::primitive(&rot);
            let quo = |part: &[Integer]| -> Result<ZPoly> {
                if part.is_empty() {
                    return Ok(Vec::new());
                }
                zpoly::div_exact(part, &rot).ok_or(Error::NotDivisible)
            };
            let re = quo(&self.re)?;
            let im = quo(&self.im)?;
            let q = Self::from_parts(low, re, im, self.den.clone());
            // divisor = c * rot with c = lc(divisor) / lc(rot)
            let c = divisor
                .leading_coeff()
                .checked_div(&GaussianRational::real(rot.last().unwrap().clone()))?;
            return Ok(q.scale(&c.inv()?));
        }
        let a = self.shift(-self.low).dense();
        let b = divisor.shift(-divisor.low).dense();
        let (q, r) = div_rem_gaussian(&a, &b);
        if r.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible);
        }
        Ok(Self::from_coeffs(low, &q))
    }

    /// Quotient and remainder of ordinary polynomials.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !(self.is_polynomial() && divisor.is_polynomial()) {
            return Err(Error::Domain("div_rem needs ordinary polynomials".into()));
        }
        let (q, r) = div_rem_gaussian(&self.dense(), &divisor.dense());
        Ok((Self::from_coeffs(0, &q), Self::from_coeffs(0, &r)))
    }
}

fn div_rem_gaussian(
    a: &[GaussianRational],
    b: &[GaussianRational],
) -> (Vec<GaussianRational>, Vec<GaussianRational>) {
    let mut rem = a.to_vec();
    while rem.last().is_some_and(GaussianRational::is_zero) {
        rem.pop();
    }
    let db = b.len() - 1;
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let inv = b[db].inv().expect("nonzero leading coefficient");
    let mut quo = vec![GaussianRational::zero(); rem.len() - db];
    for k in (0..quo.len()).rev() {
        let c = &rem[k + db] * &inv;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &(&c * bj);
        }
        quo[k] = c;
    }
    rem.truncate(db);
    (quo, rem)
}

fn euclid_gaussian(a: Vec<GaussianRational>, b: Vec<GaussianRational>) -> LaurentPolynomial {
    let mut a = LaurentPolynomial::from_coeffs(0, &a).monic();
    let mut b = LaurentPolynomial::from_coeffs(0, &b).monic();
    while !b.is_zero() {
        let (_, r) = div_rem_gaussian(&a.dense(), &b.dense());
        a = b;
        b = LaurentPolynomial::from_coeffs(0, &r).monic();
    }
    a
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in terms.iter().rev().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{k}")?,
            }
        }
        Ok(())
    }
}

fn add_sub(a: &LaurentPolynomial, b: &LaurentPolynomial, negate_b: bool) -> LaurentPolynomial {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let low = a.low.min(b.low);
    let high = a.high_exponent().unwrap().max(b.high_exponent().unwrap());
    let len = (high - low + 1) as usize;
    let g = Integer::from(a.den.gcd_ref(&b.den));
    let fa = Integer::from(&b.den / &g);
    let fb = Integer::from(&a.den / &g);
    let den = Integer::from(&a.den * &fa);
    let complex = !(a.im.is_empty() && b.im.is_empty());

    let mut re = vec![Integer::new(); len];
    let mut im = if complex {
        vec![Integer::new(); len]
    } else {
        Vec::new()
    };
    let mut accumulate = |p: &LaurentPolynomial, f: &Integer, sign: bool| {
        let off = (p.low - low) as usize;
        for (j, c) in p.re.iter().enumerate() {
            if sign {
                re[off + j] -= c * f;
            } else {
                re[off + j] += c * f;
            }
        }
        for (j, c) in p.im.iter().enumerate() {
            if sign {
                im[off + j] -= c * f;
            } else {
                im[off + j] += c * f;
            }
        }
    };
    accumulate(a, &fa, false);
    accumulate(b, &fb, negate_b);
    LaurentPolynomial::from_parts(low, re, im, den)
}

impl Add<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        add_sub(self, rhs, false)
    }
}

impl Sub<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        add_sub(self, rhs, true)
    }
}

impl Mul<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut re = zpoly::mul(&self.re, &rhs.re);
        let mut im = Vec::new();
        if !(self.im.is_empty() && rhs.im.is_empty()) {
            let len = re.len();
            im = vec![Integer::new(); len];
            if !self.im.is_empty() && !rhs.im.is_empty() {
                for (k, c) in zpoly::mul(&self.im, &rhs.im).into_iter().enumerate() {
                    re[k] -= c;
                }
            }
            if !rhs.im.is_empty() {
                for (k, c) in zpoly::mul(&self.re, &rhs.im).into_iter().enumerate() {
                    im[k] += c;
                }
            }
            if !self.im.is_empty() {
                for (k, c) in zpoly::mul(&self.im, &rhs.re).into_iter().enumerate() {
                    im[k] += c;
                }
            }
        }
        LaurentPolynomial::from_parts(
            self.low + rhs.low,
            re,
            im,
            Integer::from(&self.den * &rhs.den),
        )
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        let mut out = self.clone();
        for c in out.re.iter_mut().chain(out.im.iter_mut()) {
            *c = Integer::from(-&*c);
        }
        out
    }
}

macro_rules! owned_ops {
    ($tr:ident, $method:ident) => {
        impl $tr<LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                (&self).$method(rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::ratio(n, d)
    }

    #[test]
    fn canonical_form_strips_zeros_and_content() {
        let p = LaurentPolynomial::from_coeffs(-2, &[q(0, 1), q(2, 4), q(0, 1), q(-1, 6), q(0, 1)]);
        assert_eq!(p.low_exponent(), Some(-1));
        assert_eq!(p.high_exponent(), Some(1));
        assert_eq!(p.coeff(-1), q(1, 2));
        assert_eq!(p.coeff(1), q(-1, 6));
        assert!(LaurentPolynomial::from_coeffs(3, &[q(0, 1)]).is_zero());
    }

    #[test]
    fn exact_divide_examples() {
        let a = LaurentPolynomial::from_integers(0, &[-1, 0, 1]);
        let b = LaurentPolynomial::from_integers(0, &[-1, 1]);
        assert_eq!(
            a.exact_divide(&b).unwrap(),
            LaurentPolynomial::from_integers(0, &[1, 1])
        );

        // (ζ^3/2 - ζ/6)·ζ / ζ^2 = ζ^2/2 - 1/6
        let c = LaurentPolynomial::from_coeffs(2, &[q(-1, 6), q(0, 1), q(1, 2)]);
        let z2 = LaurentPolynomial::monomial(2, q(1, 1));
        assert_eq!(
            c.exact_divide(&z2).unwrap(),
            LaurentPolynomial::from_coeffs(0, &[q(-1, 6), q(0, 1), q(1, 2)])
        );

        let d = LaurentPolynomial::from_integers(0, &[1, 0, 1]);
        assert_eq!(d.exact_divide(&b), Err(Error::NotDivisible));
    }

    #[test]
    fn exact_divide_gaussian_divisor() {
        let i = GaussianRational::i();
        // (ζ + i)(ζ - 2) / (ζ + i)
        let f = &LaurentPolynomial::zeta() + &LaurentPolynomial::constant(i.clone());
        let g = LaurentPolynomial::from_integers(0, &[-2, 1]);
        let h =
            &LaurentPolynomial::zeta() + &LaurentPolynomial::constant(GaussianRational::new(1, 1));
        assert_eq!((&f * &g).exact_divide(&f).unwrap(), g);
        assert_eq!((&f * &h).exact_divide(&h).unwrap(), f);
        assert_eq!(g.exact_divide(&f), Err(Error::NotDivisible));
    }

    #[test]
    fn gcd_real_and_gaussian() {
        let f = LaurentPolynomial::from_integers(0, &[1, 0, 3]);
        let g = LaurentPolynomial::from_integers(0, &[2, 1]);
        let h = LaurentPolynomial::from_integers(0, &[-5, 0, 0, 1]);
        assert_eq!((&f * &g).gcd(&(&f * &h)), f.monic());

        let i = GaussianRational::i();
        let r = &LaurentPolynomial::zeta() + &LaurentPolynomial::constant(i);
        let s =
            &LaurentPolynomial::zeta() + &LaurentPolynomial::constant(GaussianRational::new(2, -1));
        assert_eq!((&r * &s).gcd(&(&r * &g)), r);
    }

    #[test]
    fn reflect_and_derivative() {
        let p = LaurentPolynomial::from_coeffs(-1, &[q(-1, 6), q(0, 1), q(1, 2)]);
        assert_eq!(p.reflect(), -&p);
        let dp = p.derivative();
        assert_eq!(dp.coeff(0), q(1, 2));
        assert_eq!(dp.coeff(-2), q(1, 6));
    }
}
