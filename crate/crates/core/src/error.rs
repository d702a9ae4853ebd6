//! Error type shared across the crate.

use thiserror::Error;

/// Errors raised by parameter validation and the evaluation engines.
///
/// `InexactDivision` deserves a note: every closed form in this crate divides
/// a fully assembled integer numerator by a fixed divisor, and that division
/// is exact for all valid inputs. If it ever fires, the input slipped past
/// validation or a formula is wrong; callers should treat it as a correctness
/// alarm, not a recoverable condition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p and q must both be nonzero (got p = {p}, q = {q})")]
    ZeroParameter { p: i64, q: i64 },

    #[error("discriminant p^2 - 4q is zero for (p, q) = ({p}, {q})")]
    ZeroDiscriminant { p: i64, q: i64 },

    #[error("negative index {index} requires q = +/-1 (got q = {q})")]
    NegativeIndexUnsupported { q: i64, index: i64 },

    #[error("sum and identity evaluation require q = +/-1 (got q = {q})")]
    SumRequiresUnitQ { q: i64 },

    #[error("inexact division in {context}: {numerator} is not divisible by {denominator}")]
    InexactDivision {
        context: &'static str,
        numerator: String,
        denominator: String,
    },

    #[error("the lambda correction sequence requires an (r, s, t) context")]
    MissingContext,

    #[error("domain violation: {0}")]
    DomainViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
