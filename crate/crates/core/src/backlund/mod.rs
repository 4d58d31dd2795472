//! The lattice of algebraic solutions generated from the seed `u_0 = ζ/2` by
//! Bäcklund steps, and exact checks of the identities each member satisfies.

mod identities;
mod lattice;
mod series;
mod state;
mod validate;

pub use identities::{
    b_constant, check_symmetries, denominator_is_square, lax_residuals, ode_residual, phi_prime,
    phi_prime_residual, SymmetryReport,
};
pub use lattice::{Lattice, DEFAULT_MAX_INDEX};
pub use series::{series_from_ode, SeriesExpansion};
pub use state::{seed_state, Component, PotentialState};
pub use validate::{series_matches, validate_state, validate_states, Check, SERIES_WINDOW};
