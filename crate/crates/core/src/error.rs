use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("{0} is not a unit")]
    NonUnit(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{op} is not supported over {ring}")]
    UnsupportedRing { op: &'static str, ring: String },

    #[error("2 is not a unit in {0}")]
    TwoNotUnit(String),

    #[error("koszul complex needs at least one element")]
    EmptyKoszul,

    #[error("graded complex is missing generator degrees")]
    MissingGrading,

    #[error("internal degrees given for a non-graded ring")]
    UnexpectedGrading,

    #[error("{0} is not homogeneous")]
    NotHomogeneous(String),

    #[error("not a chain map: {0}")]
    NotChainMap(String),

    #[error("not a homotopy: {0}")]
    NotHomotopy(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("unsupported ring map {source_ring} -> {target_ring}")]
    UnsupportedRingMap { source_ring: String, target_ring: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn mismatch(left: impl ToString, right: impl ToString) -> Self {
        Error::RingMismatch { left: left.to_string(), right: right.to_string() }
    }

    pub(crate) fn unsupported(op: &'static str, ring: impl ToString) -> Self {
        Error::UnsupportedRing { op, ring: ring.to_string() }
    }

    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }
}
