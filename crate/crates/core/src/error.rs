use thiserror::Error;

// Level and point fields are 0-based; messages print them 1-based.

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    Parse,
    Validation,
    Domain,
    Resource,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("degree must be at least 1")]
    ZeroDegree,

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a subgroup: generator {generator} is not contained in the supergroup")]
    NotSubgroup { generator: String },

    #[error("invalid chain at level {}: {reason}", .level + 1)]
    InvalidChain { level: usize, reason: String },

    #[error("invalid transversal: {reason}")]
    InvalidTransversal { reason: String },

    #[error("group is not transitive on the given points; orbits: {orbits}")]
    NotTransitive { orbits: String },

    #[error("{element} is not an element of {context}")]
    NotMember { element: String, context: String },

    #[error("{element} is not a listed coset representative")]
    NotRepresentative { element: String },

    #[error("coordinate {value} at level {} is out of range (width {width})", .level + 1)]
    CoordinateOutOfRange {
        level: usize,
        value: usize,
        width: usize,
    },

    #[error("state has {found} coordinates but the decomposition has {expected} levels")]
    StateLength { expected: usize, found: usize },

    #[error("level {} is out of range (decomposition has {length} levels)", .level + 1)]
    LevelOutOfRange { level: usize, length: usize },

    #[error("point {} is out of range for degree {degree}", .point + 1)]
    PointOutOfRange { point: usize, degree: usize },

    #[error("{what} {size} exceeds the configured bound {bound}")]
    BoundExceeded {
        what: &'static str,
        size: u128,
        bound: u128,
    },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. } => ErrorKind::Parse,
            Error::ZeroDegree
            | Error::DegreeMismatch { .. }
            | Error::NotSubgroup { .. }
            | Error::InvalidChain { .. }
            | Error::InvalidTransversal { .. }
            | Error::NotTransitive { .. } => ErrorKind::Validation,
            Error::NotMember { .. }
            | Error::NotRepresentative { .. }
            | Error::CoordinateOutOfRange { .. }
            | Error::StateLength { .. }
            | Error::LevelOutOfRange { .. }
            | Error::PointOutOfRange { .. } => ErrorKind::Domain,
            Error::BoundExceeded { .. } => ErrorKind::Resource,
        }
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
