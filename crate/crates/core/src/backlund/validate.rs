use rayon::prelude::*;

use super::identities::{
    b_constant, check_symmetries, lax_residuals, ode_residual, phi_prime_residual,
};
use super::series::series_from_ode;
use super::state::PotentialState;
use crate::exactfield::{GaussianRational, RationalFunction};

/// Exponent window, from `ζ^1` downwards, compared against the ODE series.
pub const SERIES_WINDOW: usize = 20;

/// Outcome of one named exact check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub n: i64,
    pub identity: &'static str,
    pub passed: bool,
}

const LAX_NAMES: [&str; 5] = ["lax_1", "lax_2", "lax_3", "lax_4", "lax_5"];

/// The large-`ζ` expansion of `u_n` agrees with the ODE recurrence over
/// [`SERIES_WINDOW`] exponents.
pub fn series_matches(s: &PotentialState) -> bool {
    let expansion = s.u.value.expand_at_infinity(SERIES_WINDOW);
    let series = series_from_ode(s.n, SERIES_WINDOW - 1);
    expansion == series.u_terms()
}

/// Every exact identity for one state, in a fixed order.
pub fn validate_state(s: &PotentialState) -> Vec<Check> {
    let check = |identity, passed| Check {
        n: s.n,
        identity,
        passed,
    };
    let mut out = vec![check("ode_residual", ode_residual(s).is_zero())];
    for (name, r) in LAX_NAMES.iter().zip(lax_residuals(s)) {
        out.push(check(name, r.is_zero()));
    }
    let i = RationalFunction::constant(GaussianRational::i());
    out.push(check("b_constant", b_constant(s) == i));
    out.push(check("phi_prime_residual", phi_prime_residual(s).is_zero()));
    let sym = check_symmetries(s);
    out.push(check("symmetry_real", sym.real_coefficients));
    out.push(check("symmetry_odd", sym.odd));
    out.push(check("series", series_matches(s)));
    out
}

/// [`validate_state`] over several states in parallel; output keeps the
/// input order.
pub fn validate_states(states: &[PotentialState]) -> Vec<Check> {
    states.par_iter().flat_map_iter(validate_state).collect()
}
