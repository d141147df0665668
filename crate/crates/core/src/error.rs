use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain on which a routine is defined.
    #[error("domain error in {routine}: {detail}")]
    Domain {
        routine: &'static str,
        detail: String,
    },

    /// A formula hits a pole or divergence of the underlying special function.
    #[error("pole in {routine}: {detail}")]
    Pole {
        routine: &'static str,
        detail: String,
    },

    /// An invalid configuration (zone map, tolerance, grid).
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Adaptive refinement ran out of budget before meeting the tolerance.
    #[error("no convergence in {routine}: {detail}")]
    Convergence {
        routine: &'static str,
        detail: String,
    },
}

impl Error {
    pub(crate) fn domain(routine: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            routine,
            detail: detail.into(),
        }
    }

    pub(crate) fn pole(routine: &'static str, detail: impl Into<String>) -> Self {
        Error::Pole {
            routine,
            detail: detail.into(),
        }
    }

    pub(crate) fn convergence(routine: &'static str, detail: impl Into<String>) -> Self {
        Error::Convergence {
            routine,
            detail: detail.into(),
        }
    }

    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Convergence { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
