// SPDX-License-Identifier: Apache-2.0

use alloc::string::String;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("no {0}-bit safe prime exists (bit length must be at least 3)")]
    BitLengthTooSmall(u32),
    #[error("no safe prime found within {0} candidates")]
    SearchBudgetExhausted(u64),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("{0} is not a quadratic residue modulo p")]
    NotQuadraticResidue(String),
    #[error("base 1 does not generate the residue group")]
    DegenerateBase,
    #[error("discrete log not found")]
    DlogNotFound,
    #[error("discrete-log engine limited to {max} bits, instance has {actual}")]
    DlogTooLarge { max: u32, actual: u32 },
    #[error("invalid group instance: {0}")]
    InvalidInstance(String),
    #[error("length mismatch: expected {expected} bits, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("malformed sample: {0}")]
    MalformedSample(String),
    #[error("key is bound to a different group instance")]
    KeyInstanceMismatch,
    #[error("query budget of {0} exceeded")]
    QueryBudgetExceeded(u64),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("distribution domains differ: {0} vs {1} bits")]
    DomainMismatch(usize, usize),
    #[error("empty input")]
    Empty,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("oracle does not support {0} queries")]
    UnsupportedQuery(&'static str),
    #[error("invalid bit string: {0}")]
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;
