//! Exact arithmetic over `Q(i)` in the variable `ζ = x^(1/3)`.

mod bigcomplex;
mod gaussian;
mod laurent;
mod rational;
mod roots;
mod weighted;
mod zpoly;

pub use bigcomplex::{BigComplex, Evaluation, DEFAULT_PRECISION};
pub use gaussian::GaussianRational;
pub use laurent::LaurentPolynomial;
pub use rational::RationalFunction;
pub use roots::{complex_roots, squarefree_decomposition, RootSet, MAX_ITERATIONS};
pub use weighted::WeightedRational;
