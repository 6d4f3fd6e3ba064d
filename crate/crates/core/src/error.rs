use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("algebra is not anticommutative: gamma[{i}][{j}][{k}] != -gamma[{j}][{i}][{k}]")]
    NotAnticommutative { i: usize, j: usize, k: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("subspace is not closed under multiplication: {0}")]
    NotClosed(String),

    #[error(
        "tensor is not antisymmetric: coefficient ({i},{j}) is not minus coefficient ({j},{i})"
    )]
    NotAntisymmetric { i: usize, j: usize },

    #[error("subspace is not an ideal: {0}")]
    NotIdeal(String),

    #[error("correspondence-construction failed: {0}")]
    Construction(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
