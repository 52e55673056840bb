use thiserror::Error;

use crate::multipoly::Var;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("variable {0} is unbound")]
    UnboundVariable(Var),

    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("index {index} is out of range (maximum {max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("series must have constant term exactly 1 to be inverted")]
    NotNormalized,

    #[error("family {0} has no closed form")]
    NoClosedForm(&'static str),

    #[error("order {order} is too small for n-max {n_max} (need order >= n-max + 1)")]
    OrderTooSmall { n_max: usize, order: usize },

    #[error("unknown identity tag {0:?}")]
    UnknownIdentity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
