use serde_json::Value;
use thiserror::Error;

use crate::starfields::SfieldTag;

/// Every failure the library reports. Variants that come from a failed
/// verification carry a structured witness so callers can print it.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("scalar does not belong to sfield {expected}")]
    TagMismatch { expected: SfieldTag },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("space is not certified anisotropic: {0}")]
    Certificate(String),

    #[error("vectors are linearly dependent")]
    Dependent { witness: Value },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("map does not preserve orthogonality")]
    NotOrthogonalityPreserving { witness: Value },

    #[error("inconsistent scalar factors: {0}")]
    Inconsistent(String),

    #[error("ray map is not induced by a semilinear map")]
    NotInduced { witness: Value },

    #[error("ray map is not an orthoisomorphism")]
    NotOrthoiso { witness: Value },

    #[error("transport broke the anisotropy certificate: {0}")]
    TransportDegeneracy(String),

    #[error("unsupported variant: {0}")]
    UnsupportedVariant(String),

    #[error("map does not fix the subspace up to a scalar: {0}")]
    InconsistentFixedSubspace(String),

    #[error("ray map is not a partial orthometry")]
    NotPartialOrthometry { witness: Value },
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    /// Structured payload for reports; falls back to the display string.
    pub fn witness(&self) -> Value {
        match self {
            Error::Dependent { witness }
            | Error::NotOrthogonalityPreserving { witness }
            | Error::NotInduced { witness }
            | Error::NotOrthoiso { witness }
            | Error::NotPartialOrthometry { witness } => serde_json::json!({
                "message": self.to_string(),
                "witness": witness,
            }),
            other => serde_json::json!({ "message": other.to_string() }),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
