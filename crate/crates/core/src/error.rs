use thiserror::Error;

use crate::construction::IterationReport;

/// Errors produced by graph construction, parsing and querying.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid label {0:?}: labels must be non-empty with no surrounding whitespace")]
    InvalidLabel(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("graph contains a directed cycle through `{0}`")]
    Cyclic(String),

    #[error("[{lo} - {hi}] is not an interval: `{hi}` is not reachable from `{lo}`")]
    InvalidInterval { lo: String, hi: String },

    #[error("{resource} budget of {limit} exceeded{}", iteration.map(|i| format!(" at iteration {i}")).unwrap_or_default())]
    BudgetExceeded {
        resource: &'static str,
        limit: usize,
        iteration: Option<usize>,
        /// Statistics for the iterations that completed before the budget ran out.
        partial: Option<Box<IterationReport>>,
    },

    #[error("instantiation `{0}` collides with an existing class name")]
    NameCollision(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("{line}:{column}: {kind}")]
    Declaration {
        line: usize,
        column: usize,
        kind: DeclErrorKind,
    },

    #[error("invalid configuration: {0}")]
    Config(String),
}

/// What went wrong in a class-declaration source file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeclErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("class `{0}` is declared more than once")]
    DuplicateClass(String),
    #[error("superclass `{0}` is not declared")]
    UnknownSuperclass(String),
    #[error("`{0}` is reserved for the top or bottom class")]
    ReservedName(String),
    #[error("unsupported instantiation: {0}")]
    UnsupportedInstantiation(String),
    #[error("class `{0}` declares more than one type parameter; only single-parameter generic classes are supported")]
    UnsupportedArity(String),
    #[error("inheritance cycle through `{0}`")]
    InheritanceCycle(String),
}

impl Error {
    pub(crate) fn budget(resource: &'static str, limit: usize) -> Self {
        Error::BudgetExceeded {
            resource,
            limit,
            iteration: None,
            partial: None,
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }

    pub fn decl_kind(&self) -> Option<&DeclErrorKind> {
        match self {
            Error::Declaration { kind, .. } => Some(kind),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
