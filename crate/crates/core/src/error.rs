use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// One of the eigenvalue-disjointness conditions on a Ritz tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// The eigenvalues at level `m` are distinct.
    G1(usize),
    /// Levels `m` and `m + 1` share no eigenvalue.
    G2(usize),
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::G1(m) => write!(f, "(G1_{m})"),
            Condition::G2(m) => write!(f, "(G2_{m})"),
        }
    }
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("genericity violation: {condition} fails{}", detail_suffix(.detail))]
    Genericity { condition: Condition, detail: String },
    #[error("spectral collision: {0}")]
    SpectralCollision(String),
    #[error("matrix of order {order} is not regular (commutant dimension {nullity})")]
    NotRegular { order: usize, nullity: usize },
    #[error("no unique completion: the pair (B, b) is not observable")]
    NoUniqueCompletion,
    #[error("numerical failure: {0}")]
    Numerical(String),
}

fn detail_suffix(detail: &str) -> String {
    if detail.is_empty() {
        String::new()
    } else {
        format!(" ({detail})")
    }
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    pub(crate) fn genericity(condition: Condition, detail: impl Into<String>) -> Self {
        Error::Genericity {
            condition,
            detail: detail.into(),
        }
    }
}
