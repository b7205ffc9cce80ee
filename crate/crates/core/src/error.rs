use thiserror::Error;

/// Errors produced by constructions, checkers and parsers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("capacity exceeded: {cells} cells requested, cap is {cap}")]
    Capacity { cells: u128, cap: u128 },

    #[error("invalid arity: {0}")]
    InvalidArity(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("work budget exceeded: {required} elementary checks required, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("no verified object found after {tries} tries")]
    ExhaustedTries { tries: usize },

    #[error("infeasible parameters: n = {n}, at least {min_n} needed ({detail})")]
    Infeasible { n: usize, min_n: u128, detail: String },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("entropy order violated at k = {k}")]
    OrderViolation { k: usize },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("duplicate element {0} in tuple")]
    DuplicateElement(usize),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
