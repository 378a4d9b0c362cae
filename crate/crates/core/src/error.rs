use thiserror::Error;

use crate::constructions::CoverViolation;
use crate::theta::RecognitionFailure;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MalformedHeader,
    MalformedEdge,
    VertexOutOfRange { vertex: usize, n: usize },
    Loop { vertex: usize },
    DuplicateEdge { u: usize, v: usize },
    EdgeCountMismatch { declared: usize, found: usize },
}

impl std::fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseErrorKind::MalformedHeader => write!(f, "expected header \"n m\""),
            ParseErrorKind::MalformedEdge => write!(f, "expected edge line \"u v\""),
            ParseErrorKind::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for n = {n}")
            }
            ParseErrorKind::Loop { vertex } => write!(f, "loop at vertex {vertex}"),
            ParseErrorKind::DuplicateEdge { u, v } => write!(f, "duplicate edge {u} {v}"),
            ParseErrorKind::EdgeCountMismatch { declared, found } => {
                write!(f, "header declares {declared} edges but {found} were given")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("{what} needs at most {bound} vertices, graph has {n}")]
    BoundExceeded {
        what: &'static str,
        n: usize,
        bound: usize,
    },

    #[error("{u}{v} is not an edge")]
    NotEdge { u: usize, v: usize },

    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),

    #[error("not a partial cube: {0}")]
    NotPartialCube(RecognitionFailure),

    #[error("not a copoint: {0}")]
    NotCopoint(&'static str),

    #[error("not a path: {0}")]
    NotAPath(String),

    #[error("invalid proper cover: {0}")]
    InvalidCover(CoverViolation),

    #[error("Θ-class {class} does not exist ({count} classes)")]
    InvalidClass { class: usize, count: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid glue: {0}")]
    InvalidGlue(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
