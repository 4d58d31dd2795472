use super::state::{constant, x, PotentialState};
use crate::exactfield::{
    squarefree_decomposition, GaussianRational, RationalFunction, WeightedRational,
};

fn i_times(w: &WeightedRational, re: i64, den: i64) -> WeightedRational {
    w.scale(&GaussianRational::new(0, rug::Rational::from((re, den))))
}

/// `u'' - u'²/u + u'/x - (8u² + 2n)/x + 1/u`: the equation with `ε = -1`,
/// `a = -i·n`, `b = i`. Zero exactly for genuine solutions.
pub fn ode_residual(s: &PotentialState) -> RationalFunction {
    let u = &s.u;
    let x = x();
    let u1 = u.d_dx();
    let u2 = u1.d_dx();
    let one = constant(1, 1);
    let r = &(&(&u2 - &(&(&u1 * &u1) / u)) + &(&u1 / &x))
        - &(&(&(&(u * u) * &constant(8, 1)) + &constant(2 * s.n, 1)) / &x);
    (&r + &(&one / u)).value
}

/// `φ'`, from `iφ' = (d/dx e^{iφ}) / e^{iφ}`.
pub fn phi_prime(s: &PotentialState) -> RationalFunction {
    let iphi = &s.e.d_dx() / &s.e;
    iphi.value.scale(&GaussianRational::new(0, -1))
}

/// `u·φ' - 2a·u/x - b`.
pub fn phi_prime_residual(s: &PotentialState) -> RationalFunction {
    let u = &s.u.value;
    let x = x().value;
    let two_a = RationalFunction::constant(GaussianRational::new(0, -2 * s.n));
    let r = &(u * &phi_prime(s)) - &(&(&two_a * u) / &x);
    &r - &RationalFunction::constant(GaussianRational::i())
}

/// `-2a·u/x - (i/2)·x·p·e^{-iφ} + (i/2)·x·q·e^{iφ}`; identically `b = i`.
pub fn b_constant(s: &PotentialState) -> RationalFunction {
    let x = x();
    let (u, e, p, q) = (&s.u, &s.e, &s.p, &s.q);
    let t1 = (u / &x).scale(&GaussianRational::new(0, 2 * s.n));
    let t2 = i_times(&(&x * &(p / e)), -1, 2);
    let t3 = i_times(&(&x * &(q * e)), 1, 2);
    (&(&t1 + &t2) + &t3).value
}

/// The five compatibility equations, weight factors stripped. All vanish for
/// a consistent state.
pub fn lax_residuals(s: &PotentialState) -> [RationalFunction; 5] {
    let x = x();
    let x2 = &x * &x;
    let (u, p, q) = (&s.u, &s.p, &s.q);
    let eip = &s.e;
    let eim = s.e.inv().expect("E is nonzero");
    let u1 = u.d_dx();
    let u2 = u * u;
    let phi1 = WeightedRational::plain(phi_prime(s));
    let half = constant(1, 2);
    let four_u = u * &constant(4, 1);
    let two_u = u * &constant(2, 1);
    // -i·a = -n
    let minus_ia = constant(-s.n, 1);

    let r1 = &(&u1 - &(u / &x)) - &(&(&x * &half) * &(&(p * &eim) + &(q * eip)));

    let r2 = {
        let t1 = &(&x2 * &p.d_dx()) / &four_u;
        let t2 = &(&(&x2 * p) * &u1) / &(&u2 * &constant(4, 1));
        let t3 = &(&x * p) / &two_u;
        let t4 = &(&(&x * p) * &minus_ia) / &two_u;
        let t5 = &(u * eip) * &constant(2, 1);
        &(&(&(&t1 - &t2) + &t3) + &t4) - &t5
    };

    let r3 = {
        let t1 = &(&(u * &phi1) * eip) * &constant(-1, 2);
        let t2 = i_times(&(&u1 * eip), 1, 2);
        let t3 = i_times(&(&(u * eip) / &x), -1, 2);
        let t4 = i_times(&(&x * p), -1, 2);
        &(&(&t1 + &t2) + &t3) + &t4
    };

    let r4 = {
        let t1 = &(&x2 * &q.d_dx()) / &four_u;
        let t2 = &(&(&x2 * q) * &u1) / &(&u2 * &constant(4, 1));
        let t3 = &(&x * q) / &two_u;
        let t4 = &(&(&x * q) * &minus_ia) / &two_u;
        let t5 = &(u * &eim) * &constant(2, 1);
        &(&(&(&t1 - &t2) + &t3) - &t4) - &t5
    };

    let r5 = {
        let t1 = &(&(u * &phi1) * &eim) * &constant(-1, 2);
        let t2 = i_times(&(&u1 * &eim), -1, 2);
        let t3 = i_times(&(&(u * &eim) / &x), 1, 2);
        let t4 = i_times(&(&x * q), 1, 2);
        &(&(&t1 + &t2) + &t3) + &t4
    };

    [r1.value, r2.value, r3.value, r4.value, r5.value]
}

/// Outcome of the two discrete symmetry checks on `u_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetryReport {
    /// Every coefficient of `u_n` is real (`u(ζ*) = u(ζ)*`).
    pub real_coefficients: bool,
    /// `u_n(-ζ) = -u_n(ζ)`.
    pub odd: bool,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.real_coefficients && self.odd
    }
}

pub fn check_symmetries(s: &PotentialState) -> SymmetryReport {
    let u = &s.u.value;
    SymmetryReport {
        real_coefficients: u.is_real(),
        odd: u.reflect() == -u,
    }
}

/// True when the denominator of `u_n`, with its power of `ζ` removed, is a
/// constant times a perfect square (every nonzero pole is of even order).
pub fn denominator_is_square(s: &PotentialState) -> bool {
    let den = s.u.value.denominator();
    let low = den.low_exponent().unwrap_or(0);
    squarefree_decomposition(&den.shift(-low))
        .iter()
        .all(|(_, m)| m % 2 == 0)
}
