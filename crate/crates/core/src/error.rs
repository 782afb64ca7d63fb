use thiserror::Error;

/// Failure modes shared by every evaluator and search routine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole at s = {re} + {im}i")]
    Pole { re: f64, im: f64 },
    #[error("refinement needed: {0}")]
    Refinement(String),
    #[error("zero on contour boundary: {0}")]
    Boundary(String),
    #[error("precision failure: {0}")]
    Precision(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn pole(s: num_complex::Complex64) -> Self {
        Error::Pole { re: s.re, im: s.im }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
