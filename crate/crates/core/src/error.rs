use thiserror::Error;

/// Errors raised by the algebra kernels and the pipelines built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different coefficient domains")]
    DomainMismatch,
    #[error("polynomial {0} is reducible over the base field")]
    Reducible(String),
    #[error("resource budget exceeded: {0}")]
    Resource(String),
    #[error("bad reduction at p = {0}")]
    BadReduction(u64),
    #[error("non-integral coefficient in {0}")]
    NonIntegral(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not decomposable: {stage} failed ({reason})")]
    NotDecomposable { stage: Stage, reason: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// Pipeline stage that produced a failure, reported by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Hermite,
    DivisorReduction,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Stage::Hermite => f.write_str("hermite"),
            Stage::DivisorReduction => f.write_str("divisor-reduction"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
