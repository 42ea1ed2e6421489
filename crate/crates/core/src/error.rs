use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed Cayley table: {0}")]
    MalformedTable(String),
    #[error("operation is not commutative: {x}*{y} != {y}*{x}")]
    CommutativityViolation { x: usize, y: usize },
    #[error("operation is not associative at ({x}, {y}, {z})")]
    AssociativityViolation { x: usize, y: usize, z: usize },
    #[error("element {identity} is not an identity: {identity}*{x} != {x}")]
    IdentityViolation { identity: usize, x: usize },
    #[error("monoid is not idempotent: {x}*{x} != {x}")]
    NotIdempotent { x: usize },
    #[error("{what}: {requested} exceeds the configured limit {limit}")]
    SizeLimitExceeded {
        what: &'static str,
        requested: u128,
        limit: u128,
    },
    #[error("mask {mask} is not a submonoid")]
    NotASubmonoid { mask: String },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("Vandermonde system is singular (duplicate eigenvalue {lambda})")]
    DegenerateSystem { lambda: u64 },
    #[error("normalized coefficient for lambda = {lambda} is not an integer")]
    NonIntegerNormalization { lambda: u64 },
    #[error("closed form does not evaluate to an integer at n = {n}")]
    NonIntegerCount { n: usize },
    #[error("series round trip failed at degree {degree}")]
    SeriesMismatch { degree: usize },
    #[error("{formula} disagree at ({m}, {n})")]
    FormulaMismatch {
        formula: &'static str,
        m: usize,
        n: usize,
    },
    #[error("order is not a lattice: {x} and {y} have no {missing}")]
    NotALattice {
        x: usize,
        y: usize,
        missing: &'static str,
    },
    #[error("connected component containing {element} has no unique minimal element")]
    NonUniqueMinimal { element: usize },
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("sequence too short: need {needed} terms, got {got}")]
    SequenceTooShort { needed: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
