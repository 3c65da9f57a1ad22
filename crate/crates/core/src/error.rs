use thiserror::Error;

use crate::distribution::Var;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("negative probability mass {value} at {location}")]
    NegativeMass { location: String, value: f64 },

    #[error("probability masses sum to {total}, off from 1 by {deviation:e}")]
    MassSumNotOne { total: f64, deviation: f64 },

    #[error("duplicate label {label:?} in the {var} alphabet")]
    DuplicateLabel { var: Var, label: String },

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },

    #[error("the {0} alphabet is empty")]
    EmptyAlphabet(Var),

    #[error("unknown label {label:?} for variable {var}")]
    UnknownLabel { var: Var, label: String },

    #[error("conditioning event {0} has zero probability")]
    ZeroConditioningEvent(String),

    #[error("event {0} has zero probability")]
    ZeroMarginal(String),

    #[error("total exclusion: the source event has zero probability")]
    DegenerateTotalExclusion,

    #[error("misinformative mass {misinformative} is not below p(x) = {p_x}")]
    MisinformativeExceedsEvent { misinformative: f64, p_x: f64 },

    #[error("logarithm base must be a real number greater than 1, got {0}")]
    InvalidBase(String),

    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),

    #[error("invalid monotonicity scan: {0}")]
    InvalidScanConfig(String),

    #[error("an assignment needs at least one set slot")]
    EmptyAssignment,

    #[error("event roles overlap or are missing: {0}")]
    InvalidEvents(String),

    #[error("cannot parse probability mass {0:?}")]
    InvalidMass(String),

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("malformed distribution file: {0}")]
    Format(String),

    #[error("panel has {count} blocks, more than the limit of {limit}")]
    TooManyBlocks { count: usize, limit: usize },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

impl Error {
    /// Broad category used by front ends to pick an exit status.
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::UnknownLabel { .. } => ErrorCategory::UnknownLabel,
            Error::ZeroConditioningEvent(_)
            | Error::ZeroMarginal(_)
            | Error::DegenerateTotalExclusion
            | Error::MisinformativeExceedsEvent { .. } => ErrorCategory::Undefined,
            _ => ErrorCategory::Input,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Malformed input, invalid distribution or parameters.
    Input,
    UnknownLabel,
    /// The requested quantity is undefined (a zero-probability event).
    Undefined,
}
