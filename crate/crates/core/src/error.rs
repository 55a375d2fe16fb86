use thiserror::Error;

use crate::model::Violation;

#[derive(Debug, Error)]
pub enum Error {
    /// A kinematic or physical quantity was evaluated outside its real domain.
    #[error("{stage}: {message}")]
    Domain { stage: &'static str, message: String },

    #[error("{stage}: {value} is outside [{min}, {max}]")]
    OutOfRange { stage: &'static str, value: f64, min: f64, max: f64 },

    #[error("invalid spec: {}", join(.0))]
    InvalidSpec(Vec<Violation>),

    #[error("invalid measurement: {0}")]
    InvalidMeasurement(String),

    #[error("{path}: {message}")]
    Config { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Name of the computation stage that failed, for domain-type errors.
    pub fn stage(&self) -> Option<&'static str> {
        match self {
            Error::Domain { stage, .. } | Error::OutOfRange { stage, .. } => Some(stage),
            _ => None,
        }
    }
}

fn join(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
