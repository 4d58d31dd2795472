use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("rational function has a zero denominator")]
    ZeroDenominator,

    #[error("polynomial division leaves a nonzero remainder")]
    NotDivisible,

    #[error("weight mismatch: cannot add weight {left} to weight {right}")]
    WeightMismatch { left: i64, right: i64 },

    #[error("evaluation at a pole near {re:e} + {im:e}i")]
    Pole { re: f64, im: f64 },

    #[error("{what}: point {re} + {im}i lies on a branch cut")]
    BranchCut {
        what: &'static str,
        re: f64,
        im: f64,
    },

    #[error("root finder did not converge after {iterations} iterations ({converged}/{degree} roots settled)")]
    NoConvergence {
        iterations: usize,
        converged: usize,
        degree: usize,
        /// Best approximations at the time the budget ran out.
        partial: Vec<(f64, f64)>,
    },

    #[error("index {requested} exceeds the configured limit {limit}")]
    Budget { requested: i64, limit: i64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("output: {0}")]
    Output(String),
}

impl Error {
    /// Process exit code used by the command-line frontend.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Budget { .. } => 2,
            Error::Pole { .. }
            | Error::BranchCut { .. }
            | Error::NoConvergence { .. }
            | Error::Numerical(_) => 3,
            _ => 1,
        }
    }
}
