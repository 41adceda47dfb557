use thiserror::Error;

/// Errors raised by the exact and p-adic arithmetic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QsymError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("series orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("constant term is not invertible")]
    NotInvertible,
    #[error("pole order {order} at q = 1 exceeds the bound {bound}")]
    PoleOrder { order: u32, bound: u32 },
    #[error("exponent {exponent} exceeds the cap {cap}")]
    ExponentCap { exponent: u64, cap: u64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unknown identity id `{0}`")]
    UnknownId(String),
}

pub type Result<T> = std::result::Result<T, QsymError>;
