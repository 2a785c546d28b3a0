//! Exact arithmetic kernel: arbitrary-precision rationals, sparse
//! multivariate (Laurent) polynomials, rational functions, and truncated
//! q-series. Coefficients are exact rationals only; no floating point.
//!
//! All values are immutable after construction and operations are pure,
//! so independent expressions may be evaluated concurrently.

mod mpoly;
mod qseries;
mod ratfun;

pub use mpoly::{
    gcd_univariate, mpoly_from_json, mpoly_to_json, rat, rat_from_str, rat_int, rat_to_string,
    MPoly, Mono, Rat, Var, NVARS,
};
pub use qseries::QSeries;
pub use ratfun::{ratfun_from_json, ratfun_to_json, ratfun_to_string, RatFun};

use thiserror::Error;

/// Errors surfaced by the arithmetic kernel.
#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator does not divide numerator; remainder {remainder}")]
    NotDivisible { remainder: MPoly },
    #[error("series has constant term {0}, expected 1")]
    ConstantTermNotOne(String),
    #[error("series has constant term {0}, expected 0")]
    NonzeroConstantTerm(String),
    #[error("substitution makes a denominator vanish")]
    SingularSubstitution,
    #[error("invalid rational literal '{0}'")]
    BadRational(String),
    #[error("malformed {0} JSON")]
    BadJson(String),
}
