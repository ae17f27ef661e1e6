use thiserror::Error;

/// Every failure the library reports. Variants carry enough context for the
/// CLI to print a diagnostic without re-deriving anything.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a generalized Cartan matrix: entry ({row}, {col}): {reason}")]
    NotAGcm {
        row: usize,
        col: usize,
        reason: String,
    },
    #[error("Cartan matrix is not symmetrizable (cycle through nodes {0} and {1} is inconsistent)")]
    NotSymmetrizable(usize, usize),
    #[error("realization mismatch: expected dimension {expected}, got {found}")]
    RealizationMismatch { expected: usize, found: usize },
    #[error("not a real root: {0:?}")]
    NotRealRoot(Vec<i64>),
    #[error("simple reflection index {index} out of range for rank {rank}")]
    BadIndex { index: usize, rank: usize },
    #[error("element {0:?} is not a minimal coset representative")]
    NotMinimalRep(Vec<usize>),
    #[error("length {length} exceeds the table bound {bound}")]
    LengthBoundExceeded { length: usize, bound: usize },
    #[error("length mismatch: l(v) = {v} but l(w1) + l(w2) = {sum}")]
    LengthMismatch { v: usize, sum: usize },
    #[error("unsupported pair: {0}")]
    UnsupportedPair(String),
    #[error("cup product coefficient is zero; Levi-movability is undefined here")]
    ZeroCupProduct,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unsupported algebra type: {0}")]
    UnsupportedType(String),
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("weight is not integral: {0}")]
    NotIntegral(String),
    #[error("depth window too small: need {needed}, have {available}")]
    DepthTooSmall { needed: usize, available: usize },
    #[error("triple does not lie on the face")]
    NotOnFace,
    #[error("deformed coefficient is {0}, not 1")]
    NotCoefficientOne(i64),
    #[error("operation requires a finite-type algebra")]
    NotFiniteType,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
