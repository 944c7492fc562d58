use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("{what} with n = {n} exceeds the resource limit {limit}")]
    ResourceLimit { what: &'static str, n: usize, limit: usize },
    #[error("no conversion path from {from} to {to}")]
    NoConversionPath { from: String, to: String },
    #[error("element is not in {0}")]
    NotInSubalgebra(String),
    #[error("operand mismatch: {0}")]
    Mismatch(String),
    #[error("parse error at position {position}: expected {expected}")]
    Parse { position: usize, expected: String },
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
