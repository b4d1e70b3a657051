use std::fmt;

use thiserror::Error;

/// Syntax error in polynomial text or a complex document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset (polynomial text) or 1-based line (documents).
    pub position: usize,
    /// Column for documents; 0 for polynomial text.
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn at(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            column: 0,
            message: message.into(),
        }
    }

    pub fn at_line(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            position: line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.column > 0 {
            write!(
                f,
                "line {}, column {}: {}",
                self.position, self.column, self.message
            )
        } else {
            write!(f, "position {}: {}", self.position, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("invalid document: {0}")]
    Document(String),

    #[error("lattice rank mismatch: expected {expected}, found {found}")]
    LatticeRank { expected: usize, found: usize },

    #[error("not divisible: {dividend} / {divisor}")]
    NotDivisible { dividend: String, divisor: String },

    #[error("cohomology class is zero")]
    ZeroClass,

    #[error("matrix is not unimodular (determinant {0})")]
    NonUnimodular(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("invalid chain map: {0}")]
    InvalidChainMap(String),

    #[error(
        "monic torsion coefficient rejected: {0} (principal models need non-monic annihilators)"
    )]
    MonicCoefficient(String),

    #[error("zero torsion coefficient in degree {0}")]
    ZeroCoefficient(usize),

    #[error("divisibility chain violated in degree {degree}: {lower} does not divide {upper}")]
    Divisibility {
        degree: usize,
        lower: String,
        upper: String,
    },

    #[error("substitution image is not a signed monomial: {0}")]
    NonMonomialImage(String),

    #[error("entry has negative t-exponent: {0}")]
    NonPolynomial(String),

    #[error("entry is not an integer constant: {0}")]
    NotInteger(String),

    #[error("oracle refused: {0}")]
    OracleRefused(String),

    #[error("slope fit window too short: {len} points (need at least 4)")]
    WindowTooShort { len: usize },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
