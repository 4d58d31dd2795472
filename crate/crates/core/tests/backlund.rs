use d7_algebraic::backlund::{
    denominator_is_square, phi_prime, seed_state, validate_state, Component, Lattice,
};
use d7_algebraic::exactfield::{GaussianRational, LaurentPolynomial, RationalFunction};
use d7_algebraic::Error;

fn q(n: i64, d: i64) -> GaussianRational {
    GaussianRational::ratio(n, d)
}

/// `u(x)` at real `x > 0`, through `ζ = x^{1/3}`.
fn u_at(f: &RationalFunction, x: f64) -> f64 {
    f.eval_f64(x.cbrt(), 0.0, 128).unwrap().0
}

/// Finite-difference residual of `u'' - u'²/u + u'/x - (8u² + 2n)/x + 1/u`.
fn numeric_ode_residual(f: &RationalFunction, n: i64, x: f64) -> f64 {
    let h = 2e-4 * x;
    let (um, u0, up) = (u_at(f, x - h), u_at(f, x), u_at(f, x + h));
    let u1 = (up - um) / (2.0 * h);
    let u2 = (up - 2.0 * u0 + um) / (h * h);
    let terms = [
        u2,
        u1 * u1 / u0,
        u1 / x,
        (8.0 * u0 * u0 + 2.0 * n as f64) / x,
        1.0 / u0,
    ];
    let r = terms[0] - terms[1] + terms[2] - terms[3] + terms[4];
    r / terms.iter().map(|t| t.abs()).fold(0.0, f64::max)
}

#[test]
fn first_members() {
    let mut l = Lattice::default();
    let u0 = RationalFunction::from(LaurentPolynomial::monomial(1, q(1, 2)));
    assert_eq!(l.solution(0).unwrap().u.value, u0);
    let u1 = RationalFunction::from(LaurentPolynomial::from_terms([
        (1, q(1, 2)),
        (-1, q(-1, 6)),
    ]));
    assert_eq!(l.solution(1).unwrap().u.value, u1);
}

#[test]
fn members_solve_the_equation_numerically() {
    let mut l = Lattice::default();
    for n in [-4, -1, 2, 5] {
        let u = l.solution(n).unwrap().u.value.clone();
        for x in [0.7, 2.0, 9.0] {
            let r = numeric_ode_residual(&u, n, x);
            assert!(r.abs() < 1e-5, "n = {n}, x = {x}: relative residual {r}");
        }
    }
}

#[test]
fn poles_away_from_origin_are_double() {
    let mut l = Lattice::default();
    for n in 1..=8 {
        assert!(denominator_is_square(l.solution(n).unwrap()), "n = {n}");
    }
}

#[test]
fn seed_phase() {
    // u φ' - b = 0 with a = 0, b = i gives φ' = i/u = 2i/ζ
    let s = seed_state();
    let expect =
        RationalFunction::from(LaurentPolynomial::monomial(-1, GaussianRational::new(0, 2)));
    assert_eq!(phi_prime(&s), expect);
}

#[test]
fn every_check_passes_and_every_fault_is_caught() {
    let mut l = Lattice::default();
    for n in -3..=3 {
        let s = l.solution(n).unwrap().clone();
        let checks = validate_state(&s);
        assert!(checks.iter().all(|c| c.passed), "n = {n}: {checks:?}");
        for c in Component::ALL {
            let bad = validate_state(&s.perturbed(c));
            assert!(
                bad.iter().any(|c| !c.passed),
                "perturbing {} at n = {n} went unnoticed",
                c.name()
            );
        }
    }
}

#[test]
fn budget_is_reported() {
    let mut l = Lattice::new(3);
    assert_eq!(
        l.solution(-4).unwrap_err(),
        Error::Budget {
            requested: -4,
            limit: 3
        }
    );
    assert_eq!(
        Error::Budget {
            requested: 4,
            limit: 3
        }
        .exit_code(),
        2
    );
}

#[test]
fn components_parse_by_name() {
    for c in Component::ALL {
        assert_eq!(c.name().parse::<Component>().unwrap(), c);
    }
    assert!("z".parse::<Component>().is_err());
}
