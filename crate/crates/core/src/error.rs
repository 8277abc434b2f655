use thiserror::Error;

use crate::subsets::KSubset;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("parameter mismatch: {0}")]
    Mismatch(String),

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("malformed family document: {0}")]
    Malformed(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("pole at n = {0}")]
    Pole(i64),

    #[error("zero denominator {what} at n = {n} (outside the valid regime)")]
    ZeroDenominator { what: String, n: i64 },

    #[error("dense order {order} exceeds the budget of {budget}")]
    SizeBudget { order: u64, budget: u64 },

    #[error("t-subset {witness} lies in {count} blocks, expected {expected}")]
    NotADesign {
        witness: KSubset,
        count: u64,
        expected: u64,
    },

    #[error("eigen system self-check failed for J({n},{k}): {check}")]
    EigenCheck { n: usize, k: usize, check: String },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("parse error: {0}")]
    Parse(String),
}
