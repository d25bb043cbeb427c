use thiserror::Error;

use crate::liecore::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid triplet: {} violated invariant(s), first: {}", .0.len(), .0.first().map(ToString::to_string).unwrap_or_default())]
    InvalidTriplet(Vec<Violation>),
    #[error("degenerate form: {0}")]
    DegenerateForm(String),
    #[error("grading element is not unique")]
    AmbiguousGrading,
    #[error("local algebra is not transitive ({}); use reduce_triplet first", .0.join("; "))]
    TransitivityRequired(Vec<String>),
    #[error("tower has not terminated within {0} degrees")]
    NotTerminated(usize),
    #[error("tower too short: need degree {needed}, have {have}")]
    TowerTooShort { needed: usize, have: usize },
    #[error("{0} is outside the supported range")]
    OutOfRange(String),
    #[error("no sl2-triple: {0}")]
    NoTriple(String),
    #[error("refused: {0}")]
    Refused(String),
}

pub type Result<T> = std::result::Result<T, Error>;
