use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("inner series must have a zero constant term")]
    NonZeroConstantTerm,
    #[error("constant term is not invertible")]
    NotInvertible,
    #[error("cannot differentiate a series of order 0")]
    DeriveOrderZero,
    #[error("series order {order} is too small, need at least {needed}")]
    OrderTooSmall { order: usize, needed: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown check `{id}` (valid: {valid})")]
    UnknownCheck { id: String, valid: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
