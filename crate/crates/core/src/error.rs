use thiserror::Error;

use crate::solve::Certificate;

/// Errors raised by graph construction, solvers and constructions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The operation is only defined for digraphs without isolated vertices.
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),

    #[error("state space too large: {states} column states exceed the cap of {cap}")]
    StateSpaceTooLarge { states: u64, cap: u64 },

    /// The search ran out of nodes or time before proving optimality.
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExceeded {
        nodes: u64,
        incumbent: Option<Box<Incumbent>>,
    },
}

/// Best solution known when a search was cut short.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Incumbent {
    pub value: usize,
    pub certificate: Certificate,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
