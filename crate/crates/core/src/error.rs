use thiserror::Error;

use crate::liebialg::Residual;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },

    #[error("domain error in `{field}`: {detail}")]
    Domain { field: String, detail: String },

    #[error("invalid parameter `{name}`: {detail}")]
    Parameter { name: String, detail: String },

    #[error("unknown system `{0}`")]
    UnknownSystem(String),

    #[error("co-Jacobi identity fails with {} nonzero residual(s)", .0.len())]
    CoJacobi(Vec<Residual>),

    #[error("invalid integrator configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(field: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Domain {
            field: field.into(),
            detail: detail.into(),
        }
    }

    pub(crate) fn parameter(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Parameter {
            name: name.into(),
            detail: detail.into(),
        }
    }

    pub(crate) fn dims(context: impl Into<String>, expected: usize, found: usize) -> Self {
        Error::DimensionMismatch {
            context: context.into(),
            expected,
            found,
        }
    }
}
