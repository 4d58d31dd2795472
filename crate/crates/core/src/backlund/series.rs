use super::state::x;
use crate::exactfield::{GaussianRational, LaurentPolynomial, RationalFunction, WeightedRational};

/// Coefficients of `v(ζ) = Σ v_j ζ^{-j}` with `u = ½ ζ v(ζ)` solving the
/// equation at large `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesExpansion {
    pub n: i64,
    pub coefficients: Vec<GaussianRational>,
}

impl SeriesExpansion {
    /// `(exponent, coefficient)` pairs of `u = ½ζ v`, nonzero entries only.
    pub fn u_terms(&self) -> Vec<(i64, GaussianRational)> {
        let half = GaussianRational::ratio(1, 2);
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (1 - j as i64, c * &half))
            .collect()
    }
}

/// `x·u·(ODE)` = `x u u'' - x u'^2 + u u' - 8u³ - 2n u + x` for a finite `u`.
fn scaled_residual(n: i64, v: &[GaussianRational]) -> LaurentPolynomial {
    let u_poly = LaurentPolynomial::from_terms(
        v.iter()
            .enumerate()
            .map(|(j, c)| (1 - j as i64, c * &GaussianRational::ratio(1, 2))),
    );
    let u = WeightedRational::plain(RationalFunction::from(u_poly));
    let x = x();
    let u1 = u.d_dx();
    let u2 = u1.d_dx();
    let c = |k: i64| WeightedRational::plain(RationalFunction::from(k));
    let f = &(&(&(&(&(&(&x * &u) * &u2) - &(&(&x * &u1) * &u1)) + &(&u * &u1))
        - &(&(&(&u * &u) * &u) * &c(8)))
        - &(&u * &c(2 * n)))
        + &x;
    f.value
        .as_laurent()
        .expect("finite series stays a Laurent polynomial")
}

/// `v_0..=v_terms` from the large-`ζ` recurrence.
///
/// The coefficient of `ζ^{3-j}` in the scaled residual is affine in `v_j`
/// once `v_0..v_{j-1}` are fixed; it is solved from two evaluations.
pub fn series_from_ode(n: i64, terms: usize) -> SeriesExpansion {
    let mut v = vec![GaussianRational::one()];
    for j in 1..=terms {
        let exponent = 3 - j as i64;
        v.push(GaussianRational::zero());
        let c0 = scaled_residual(n, &v).coeff(exponent);
        v[j] = GaussianRational::one();
        let c1 = scaled_residual(n, &v).coeff(exponent);
        let mut slope = c1;
        slope -= &c0;
        assert!(!slope.is_zero(), "recurrence degenerates at j = {j}");
        v[j] = -(&c0 * &slope.inv().unwrap());
    }
    SeriesExpansion { n, coefficients: v }
}
