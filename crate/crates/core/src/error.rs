use thiserror::Error;

use crate::sets::ElementSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow { row: usize, expected: usize, found: usize },

    #[error("line {line}: cannot parse `{token}` as a rational number")]
    BadNumber { line: usize, token: String },

    #[error("line {line}: zero denominator in `{token}`")]
    ZeroDenominator { line: usize, token: String },

    #[error("matrix has no rows and no declared ground set size")]
    EmptyMatrix,

    #[error("ground set of size {size} exceeds the limit of {limit}; pass --allow-large to override")]
    GroundSetTooLarge { size: usize, limit: usize },

    #[error("ground set of size {0} exceeds the bitset capacity of 64 coordinates")]
    GroundSetUnsupported(usize),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid sign character `{0}`")]
    BadSign(char),

    #[error("{0} is not a flat")]
    NotAFlat(ElementSet),

    #[error("{0} is not a tope")]
    NotATope(String),

    #[error("order relation contains a cycle through element {0}")]
    Cycle(usize),

    #[error("poset is not graded: cover {lower} < {upper} does not raise the rank by one")]
    NotGraded { lower: usize, upper: usize },

    #[error("complex is not pure of dimension {0}")]
    NotPure(usize),
}
