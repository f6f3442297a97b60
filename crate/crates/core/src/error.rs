use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),
    #[error("size guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
    #[error("json: {0}")]
    Json(String),
}

/// What went wrong on a given line of a `.hg` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingHeader,
    Malformed(String),
    VertexOutOfRange { vertex: usize, n: usize },
    DuplicateEdge,
    WrongCardinality { expected: usize, found: usize },
    NotIncreasing,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::MissingHeader => write!(f, "missing `n k` header"),
            ParseErrorKind::Malformed(s) => write!(f, "malformed line: {s}"),
            ParseErrorKind::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} is outside 1..={n}")
            }
            ParseErrorKind::DuplicateEdge => write!(f, "duplicate edge"),
            ParseErrorKind::WrongCardinality { expected, found } => {
                write!(f, "edge has {found} vertices, expected {expected}")
            }
            ParseErrorKind::NotIncreasing => write!(f, "edge vertices must be strictly increasing"),
        }
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}
