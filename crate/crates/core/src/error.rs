use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("specification error: {0}")]
    Specification(String),
    #[error("not a unit: constant term is {0}, expected 1")]
    NotAUnit(String),
    #[error("invalid discrete data: {0}")]
    InvalidData(String),
    #[error("out of regime: {0}")]
    OutOfRegime(String),
    #[error("ring mismatch: operands live in different algebras")]
    RingMismatch,
    #[error("series truncation exhausted: no valid coefficients remain")]
    TruncationExhausted,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("reduction not guaranteed: {reason}")]
    ReductionNotGuaranteed { reason: String, trace: Vec<String> },
    #[error("parse error at {context}: {message}")]
    Parse { context: String, message: String },
}

impl Error {
    pub(crate) fn spec(msg: impl Into<String>) -> Self {
        Error::Specification(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidData(msg.into())
    }

    pub(crate) fn regime(msg: impl Into<String>) -> Self {
        Error::OutOfRegime(msg.into())
    }

    pub(crate) fn parse(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            context: context.into(),
            message: message.into(),
        }
    }
}
