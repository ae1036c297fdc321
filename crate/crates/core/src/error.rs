use thiserror::Error;

/// Errors raised across the crate.
///
/// Matrix positions are reported 1-based, in the order of the index set.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("labels are not distinct or do not match the matrix size")]
    BadLabels,
    #[error("diagonal entry at ({s},{t}) is {value}, expected 2")]
    DiagonalNotTwo { s: usize, t: usize, value: i64 },
    #[error("off-diagonal entry at ({s},{t}) is positive ({value})")]
    PositiveOffDiagonal { s: usize, t: usize, value: i64 },
    #[error("entry ({s},{t}) is zero but ({t},{s}) is not")]
    AsymmetricZero { s: usize, t: usize },
    #[error("unknown generator label {0}")]
    UnknownLabel(String),
    #[error("the zero vector is not a root candidate")]
    ZeroVector,
    #[error("vector {0} is not a real root")]
    NotRealRoot(String),
    #[error("vector {0} is not a positive real root within the cutoff")]
    NotPositiveRealRoot(String),
    #[error("characteristic {p} must exceed the height cutoff {cutoff}")]
    CharacteristicTooSmall { p: u64, cutoff: usize },
    #[error("height {height} exceeds the cutoff {cutoff}")]
    HeightExceedsCutoff { height: i64, cutoff: usize },
    #[error("characteristic {p} does not exceed the largest off-diagonal magnitude {bound}")]
    HypothesisViolated { p: u64, bound: i64 },
    #[error("enumeration exceeded the cap of {cap} elements")]
    EnumerationCapExceeded { cap: usize },
    #[error("truncation order {k} is too shallow, need more than {needed}")]
    TruncationTooShallow { k: usize, needed: usize },
    #[error("group is not a {p}-group: {reason}")]
    NotAPGroup { p: u64, reason: String },
    #[error("subgroup chain is not nested at position {0}")]
    ChainNotNested(usize),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
