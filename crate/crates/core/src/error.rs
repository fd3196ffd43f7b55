use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polytope is empty")]
    Empty,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("polytope is not full-dimensional")]
    LowerDimensional,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("fan is not complete")]
    NotComplete,
    #[error("fan is not simplicial")]
    NotSimplicial,
    #[error("inconsistent primitive relations: {0}")]
    InconsistentRelations(String),
    #[error("class group has torsion {0:?}, which is not supported")]
    TorsionClassGroup(Vec<String>),
    #[error("divisor is not big")]
    NotBig,
    #[error("divisor is not Cartier: {0}")]
    NotCartier(String),
    #[error("variety is not Fano")]
    NotFano,
    #[error("no suitable multiple found within {0} steps")]
    NoSuchM(u64),
    #[error("gave up after {0} attempts")]
    ExhaustedAttempts(usize),
    #[error("polytopes are combinatorially equivalent")]
    SameChamber,
    #[error("value {value} outside weight range [{min}, {max}]")]
    OutOfRange {
        value: String,
        min: String,
        max: String,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
