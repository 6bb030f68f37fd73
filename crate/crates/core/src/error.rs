use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("formal exp is undefined: constant term is {0}, expected 0")]
    ExpConstantTerm(String),

    #[error("formal log is undefined: constant term is {0}, expected 1")]
    LogConstantTerm(String),

    #[error(
        "series is not the reciprocal of a polynomial of degree <= {bound}: coefficient of w^{exponent} is nonzero"
    )]
    NotPolynomial { bound: usize, exponent: usize },

    #[error("series order {available} is insufficient; raise order to at least {required}")]
    InsufficientOrder { required: usize, available: usize },

    #[error("rational function denominator must have a nonzero constant term")]
    BadDenominator,

    #[error("{op} needs a function of u (only even powers of w)")]
    NotEvenInW { op: &'static str },

    #[error("representation {rep} is not defined for root system {kind}")]
    RepMismatch { rep: String, kind: String },

    #[error("{0}")]
    InvalidGroup(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Spec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
