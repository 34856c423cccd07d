//! Error type shared across the crate.

use thiserror::Error;

/// Errors raised by exact-arithmetic and diagram operations.
///
/// `NotDivisible` deserves a note: every division performed by the formula
/// engines is exact by theorem, so seeing it means an implementation bug,
/// never bad input data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exact division failed: {0} is not divisible by {1}")]
    NotDivisible(String, String),

    #[error("factorial of negative argument {0}")]
    NegativeFactorial(i64),

    #[error("multi-index parts sum to {got}, expected {expected}")]
    BadMultiIndex { expected: i64, got: i64 },

    #[error("evaluation at A = 0 is undefined")]
    ZeroBase,

    #[error("element has odd part; target basis spans only the even subspace")]
    NotEven,

    #[error("colors ({0}, {1}, {2}) are not admissible")]
    NotAdmissible(usize, usize, usize),

    #[error("index k = {k} out of range 0..={n}")]
    IndexOutOfRange { n: usize, k: i64 },

    #[error("color N = {0} is invalid; colors start at 1")]
    BadColor(i64),

    #[error("state sum on {0} crossings exceeds the {1}-crossing cap")]
    TooManyCrossings(usize, usize),

    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),

    #[error("twist parameter p = {0} outside the supported range")]
    UnsupportedP(i64),
}

pub type Result<T> = std::result::Result<T, Error>;
