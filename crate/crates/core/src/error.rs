use thiserror::Error;

use crate::structure::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid structure: {0}")]
    InvalidStructure(Violation),

    #[error("structures are not similar: {0}")]
    NotSimilar(String),

    #[error("budget exceeded: {what} needs {needed}, cap is {cap}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("search node limit of {0} exceeded")]
    NodeLimitExceeded(u64),

    #[error("enumeration cap of {0} exceeded")]
    CapExceeded(usize),

    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    #[error("slice does not cover arity {0}")]
    MissingArity(usize),

    #[error("arity windows differ: {0}")]
    ArityWindowMismatch(String),

    #[error("not a template: {0}")]
    NotATemplate(String),

    #[error("wrong template: {0}")]
    WrongTemplate(String),

    #[error("wrong signature: {0}")]
    WrongSignature(String),

    #[error("invalid sandwich: {0}")]
    InvalidSandwich(String),

    #[error("malformed gadget data: {0}")]
    MalformedGadget(String),

    #[error("malformed chain of minors: {0}")]
    MalformedChain(String),

    #[error("malformed selection: {0}")]
    MalformedSelection(String),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("system is infeasible")]
    Infeasible,

    #[error("wrong variable bounds: {0}")]
    WrongBounds(&'static str),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// True for the errors that signal an exhausted resource rather than a
    /// malformed input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::NodeLimitExceeded(_) | Error::CapExceeded(_)
        )
    }
}
