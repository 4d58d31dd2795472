//! All complex roots of an exact polynomial at a chosen binary precision.
//!
//! The polynomial is first split exactly: the power of `ζ` gives the root at
//! the origin, and Yun's squarefree decomposition separates repeated factors.
//! Every squarefree factor is then solved by Aberth–Ehrlich iteration in MPFR
//! arithmetic, so multiple roots never slow the iteration down.

use rug::Float;

use super::bigcomplex::BigComplex;
use super::laurent::LaurentPolynomial;
use crate::error::{Error, Result};

const GUARD_BITS: u32 = 32;

/// Roots of a polynomial, repeated according to multiplicity and ordered
/// lexicographically by `(re, im)`.
#[derive(Clone, Debug)]
pub struct RootSet {
    pub precision: u32,
    pub roots: Vec<BigComplex>,
    /// `|p(root)|` evaluated at the working precision.
    pub residuals: Vec<f64>,
    /// `Σ|c_k||root|^k`, the scale a residual should be compared to.
    pub scales: Vec<f64>,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn to_f64(&self) -> Vec<(f64, f64)> {
        self.roots.iter().map(BigComplex::to_f64).collect()
    }

    /// Largest `residual / scale`.
    pub fn max_relative_residual(&self) -> f64 {
        self.residuals
            .iter()
            .zip(&self.scales)
            .map(|(r, s)| if *s > 0.0 { r / s } else { *r })
            .fold(0.0, f64::max)
    }
}

/// Squarefree factors `(f_i, i)` with `p = c · Π f_i^i`, each `f_i` monic.
pub fn squarefree_decomposition(p: &LaurentPolynomial) -> Vec<(LaurentPolynomial, usize)> {
    let one = LaurentPolynomial::one();
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    if a0 == one {
        out.push((p.monic(), 1));
        return out;
    }
    let mut b = p.exact_divide(&a0).expect("gcd divides p");
    let c = dp.exact_divide(&a0).expect("gcd divides p'");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        let c = d.exact_divide(&a).expect("gcd divides d");
        b = b.exact_divide(&a).expect("gcd divides b");
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

/// All roots of the nonzero ordinary polynomial `p`, with multiplicity.
pub fn complex_roots(p: &LaurentPolynomial, precision: u32) -> Result<RootSet> {
    if p.is_zero() {
        return Err(Error::Domain(
            "the zero polynomial has no finite root set".into(),
        ));
    }
    if !p.is_polynomial() {
        return Err(Error::Domain(
            "root finding needs an ordinary polynomial".into(),
        ));
    }
    let origin = p.low_exponent().unwrap() as usize;
    let stripped = p.shift(-(origin as i64));

    let mut roots = vec![BigComplex::zero(precision); origin];
    for (factor, multiplicity) in squarefree_decomposition(&stripped) {
        let found = aberth(&factor, precision)?;
        for _ in 0..multiplicity {
            roots.extend(found.iter().cloned());
        }
    }
    if p.is_real() {
        // conjugate symmetry: a simple real root can only drift off the
        // axis by rounding
        let eps = Float::with_val(precision, Float::i_exp(1, -(precision as i32) + 4));
        for r in roots.iter_mut() {
            let zabs = r.abs();
            let bound = if zabs > 1 {
                Float::with_val(precision, &eps * &zabs)
            } else {
                eps.clone()
            };
            if Float::with_val(precision, r.im.abs_ref()) <= bound {
                r.im = Float::new(precision);
            }
        }
    }
    sort_roots(&mut roots, precision);

    let mut residuals = Vec::with_capacity(roots.len());
    let mut scales = Vec::with_capacity(roots.len());
    for r in &roots {
        let ev = p.eval_big(r);
        residuals.push(ev.value.abs().to_f64());
        scales.push(p.magnitude_at(r));
    }
    Ok(RootSet {
        precision,
        roots,
        residuals,
        scales,
    })
}

/// Lexicographic `(re, im)` order in which real parts equal to working
/// accuracy count as tied, so rounding noise never decides the order.
fn sort_roots(roots: &mut [BigComplex], precision: u32) {
    roots.sort_by(|a, b| a.lex_cmp(b));
    let eps = Float::with_val(precision, Float::i_exp(1, -(precision as i32) + 8));
    let tied = |a: &BigComplex, b: &BigComplex| {
        let scale = Float::with_val(precision, a.re.abs_ref())
            .max(&Float::with_val(precision, b.re.abs_ref()));
        let scale = if scale > 1 {
            scale
        } else {
            Float::with_val(precision, 1)
        };
        Float::with_val(precision, &a.re - &b.re).abs() <= Float::with_val(precision, &eps * &scale)
    };
    let mut start = 0;
    while start < roots.len() {
        let mut end = start + 1;
        while end < roots.len() && tied(&roots[end - 1], &roots[end]) {
            end += 1;
        }
        roots[start..end]
            .sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal));
        start = end;
    }
}

/// Maximum number of Aberth sweeps before giving up.
pub const MAX_ITERATIONS: usize = 2000;

fn aberth(p: &LaurentPolynomial, precision: u32) -> Result<Vec<BigComplex>> {
    let degree = p.degree().unwrap();
    if degree == 1 {
        let prec = precision + GUARD_BITS;
        let c0 = BigComplex::from_gaussian(prec, &p.coeff(0));
        let c1 = BigComplex::from_gaussian(prec, &p.coeff(1));
        let r = c0.div(&c1).unwrap();
        return Ok(vec![round_to(BigComplex::zero(prec).sub(&r), precision)]);
    }
    // Start on a circle whose radius is the geometric mean of the root moduli.
    let a0 = BigComplex::from_gaussian(64, &p.coeff(0)).abs().to_f64();
    let an = BigComplex::from_gaussian(64, &p.coeff(degree as i64))
        .abs()
        .to_f64();
    let radius = if a0 > 0.0 {
        (a0 / an).powf(1.0 / degree as f64)
    } else {
        1.0
    };
    let mut z: Vec<BigComplex> = (0..degree)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / degree as f64 + 0.4;
            BigComplex::from_f64(
                precision + GUARD_BITS,
                radius * theta.cos(),
                radius * theta.sin(),
            )
        })
        .collect();

    // Cancellation near clustered roots costs bits; raise the working
    // precision until the measured loss fits in the guard.
    let mut guard = GUARD_BITS;
    loop {
        let prec = precision + guard;
        z = z.into_iter().map(|c| round_to(c, prec)).collect();
        aberth_sweeps(p, prec, precision, radius, &mut z)?;
        let loss = z.iter().map(|r| lost_bits(p, r)).fold(0.0, f64::max).ceil() as u32;
        if loss + 8 <= guard {
            return Ok(z.into_iter().map(|c| round_to(c, precision)).collect());
        }
        if guard > 16 * precision + 4096 {
            return Err(Error::Numerical(format!(
                "root refinement needs more than {guard} guard bits"
            )));
        }
        guard = loss + GUARD_BITS;
    }
}

/// `log2(Σ|c_k||z|^k / |z p'(z)|)`: bits lost resolving a simple root at `z`.
fn lost_bits(p: &LaurentPolynomial, z: &BigComplex) -> f64 {
    let scale = p.magnitude_at(z);
    let zd = p.derivative().eval_big(z).value.mul(z).abs().to_f64();
    if zd > 0.0 && scale > 0.0 {
        (scale / zd).log2().max(0.0)
    } else {
        f64::INFINITY
    }
}

fn aberth_sweeps(
    p: &LaurentPolynomial,
    prec: u32,
    precision: u32,
    radius: f64,
    z: &mut [BigComplex],
) -> Result<()> {
    let degree = z.len();
    let coeffs: Vec<BigComplex> = (0..=degree as i64)
        .map(|k| BigComplex::from_gaussian(prec, &p.coeff(k)))
        .collect();
    let dcoeffs: Vec<BigComplex> = (1..=degree)
        .map(|k| coeffs[k].scale(&Float::with_val(prec, k as u32)))
        .collect();
    let abs_coeffs: Vec<Float> = coeffs.iter().map(BigComplex::abs).collect();
    let mut done = vec![false; degree];
    let tol = Float::with_val(prec, Float::i_exp(1, -(precision as i32) + 2));
    let noise = (4.0 * degree as f64 + 8.0) * (-(prec as f64)).exp2();

    for _ in 0..MAX_ITERATIONS {
        for k in 0..degree {
            if done[k] {
                continue;
            }
            let pv = horner(&coeffs, &z[k]);
            if pv.is_zero() {
                done[k] = true;
                continue;
            }
            let dv = horner(&dcoeffs, &z[k]);
            let Some(ratio) = pv.div(&dv) else {
                // stationary point: nudge and retry next sweep
                z[k].re += Float::with_val(prec, radius * 1e-3);
                continue;
            };
            let mut sum = BigComplex::zero(prec);
            for j in 0..degree {
                if j != k {
                    if let Some(inv) = z[k].sub(&z[j]).recip() {
                        sum = sum.add(&inv);
                    }
                }
            }
            let one = BigComplex::from_f64(prec, 1.0, 0.0);
            let denom = one.sub(&ratio.mul(&sum));
            let step = ratio.div(&denom).unwrap_or(ratio);
            let size = step.abs();
            let zabs = z[k].abs();
            // below the rounding noise of Horner the step carries no information
            let at_noise = pv.abs().to_f64() <= 4.0 * noise * horner_abs(&abs_coeffs, &zabs);
            z[k] = z[k].sub(&step);
            let scale = if zabs > 1 {
                zabs
            } else {
                Float::with_val(prec, 1)
            };
            if at_noise || size <= Float::with_val(prec, &tol * &scale) {
                done[k] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return Ok(());
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_ITERATIONS,
        converged: done.iter().filter(|&&d| d).count(),
        degree,
        partial: z.iter().map(BigComplex::to_f64).collect(),
    })
}

fn horner(coeffs: &[BigComplex], z: &BigComplex) -> BigComplex {
    let mut acc = BigComplex::zero(z.prec());
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(c);
    }
    acc
}

fn horner_abs(coeffs: &[Float], r: &Float) -> f64 {
    let mut acc = Float::new(r.prec());
    for c in coeffs.iter().rev() {
        acc *= r;
        acc += c;
    }
    acc.to_f64()
}

fn round_to(c: BigComplex, prec: u32) -> BigComplex {
    BigComplex {
        re: Float::with_val(prec, c.re),
        im: Float::with_val(prec, c.im),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::GaussianRational;

    #[test]
    fn roots_of_z2_plus_one() {
        let p = LaurentPolynomial::from_integers(0, &[1, 0, 1]);
        let r = complex_roots(&p, 128).unwrap().to_f64();
        assert_eq!(r.len(), 2);
        assert!((r[0].0).abs() < 1e-30 && (r[0].1 + 1.0).abs() < 1e-30);
        assert!((r[1].0).abs() < 1e-30 && (r[1].1 - 1.0).abs() < 1e-30);
    }

    #[test]
    fn repeated_roots_are_reported_with_multiplicity() {
        // (ζ - 1)^3 (ζ + 2)^2 ζ
        let a = LaurentPolynomial::from_integers(0, &[-1, 1]);
        let b = LaurentPolynomial::from_integers(0, &[2, 1]);
        let p = &(&a.pow(3) * &b.pow(2)) * &LaurentPolynomial::zeta();
        let sqf = squarefree_decomposition(&p.shift(-1));
        assert_eq!(sqf, vec![(b.clone(), 2), (a.clone(), 3)]);
        let r = complex_roots(&p, 128).unwrap().to_f64();
        let reals: Vec<f64> = r.iter().map(|c| c.0).collect();
        let expect = [-2.0, -2.0, 0.0, 1.0, 1.0, 1.0];
        for (x, e) in reals.iter().zip(expect) {
            assert!((x - e).abs() < 1e-30, "{reals:?}");
        }
    }

    #[test]
    fn constant_has_no_roots() {
        let p = LaurentPolynomial::constant(GaussianRational::from(7));
        assert!(complex_roots(&p, 64).unwrap().is_empty());
    }
}
