use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed rational `{0}` (expected \"p\" or \"p/q\" with q > 0)")]
pub struct ParseScalarError(pub String);

/// Errors raised by constructors and operations on malformed input.
///
/// Check failures are never errors; they are reported through
/// [`crate::report::CheckReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed permutation {0:?}: images must be a bijection on 1..=k")]
    MalformedPermutation(Vec<usize>),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("wrong argument count: expected {expected}, found {found}")]
    ArgumentCount { expected: usize, found: usize },
    #[error("invalid slot set {0:?}")]
    InvalidSlots(Vec<usize>),
    #[error("index tuple {0:?} is not strictly increasing within 1..=d")]
    NonCanonicalIndex(Vec<usize>),
    #[error("duplicate entry for index tuple {0:?}")]
    DuplicateEntry(Vec<usize>),
    #[error("arity must be at least 2 and dimension at least 1 (got n = {arity}, d = {dim})")]
    BadShape { arity: usize, dim: usize },
    #[error("gamma(e_{basis}) is not antisymmetric in slots {slots:?} (entry at {at:?})")]
    NotAntisymmetric {
        basis: usize,
        slots: (usize, usize),
        at: Vec<usize>,
    },
    #[error("{what} out of range: {value} (allowed 1..={max})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        max: usize,
    },
    #[error("the tensor-power exponent must be positive")]
    ZeroPower,
    #[error("cochain degree {found} is not valid here (need {need})")]
    BadDegree { found: usize, need: &'static str },
    #[error("subspace basis is rank deficient (rank {rank} < {len} vectors)")]
    RankDeficient { rank: usize, len: usize },
    #[error("bilinear form is {0}")]
    BadForm(&'static str),
    #[error("input is not {0}")]
    Precondition(String),
    #[error("unknown catalog entry `{name}`; available: {available}")]
    UnknownName { name: String, available: String },
    #[error(transparent)]
    Scalar(#[from] ParseScalarError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
