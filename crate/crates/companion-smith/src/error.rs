//! Crate-wide error type.

use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the exact-arithmetic operations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A divisor polynomial was required to be monic (leading coefficient 1).
    #[error("divisor polynomial is not monic")]
    NonMonicDivisor,

    /// Polynomial division by the zero polynomial.
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,

    /// An argument fell outside the operation's documented range.
    #[error("argument out of range: {0}")]
    OutOfRange(String),

    /// A square matrix was required.
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    /// Minor enumeration refused: the matrix exceeds the configured cap.
    #[error("minor enumeration too large: min dimension {min_dim} exceeds cap {cap}")]
    TooLarge { min_dim: usize, cap: usize },

    /// A determinantal-divisor sequence violated its chain conditions.
    #[error("invalid determinantal divisor chain: {0}")]
    InvalidDivisorChain(String),

    /// The matrix is zero, so no nonzero determinantal divisor exists.
    #[error("matrix is zero: no nonzero determinantal divisor")]
    AllZeroMatrix,

    /// The coprimality hypothesis of a factorization splitting failed.
    #[error("resultants are not coprime (gcd {gcd})")]
    ResultantsNotCoprime { gcd: BigInt },

    /// Two integer arguments were required to be coprime.
    #[error("{a} and {b} are not coprime (gcd {gcd})")]
    NotCoprime { a: u64, b: u64, gcd: u64 },

    /// Text input could not be parsed.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
