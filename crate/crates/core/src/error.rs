use alloc::string::String;

/// Errors reported by the library.
///
/// Variants fall into two groups: malformed or unsupported input
/// ([`Error::is_input_error`]) and numeric failures such as singular blocks or
/// non-generic data.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("graphs are limited to {max} vertices, got {n}")]
    TooManyVertices { n: usize, max: usize },
    #[error("exact search limited to {limit} vertices, graph has {n}")]
    SearchLimit { n: usize, limit: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("non-finite matrix entry at ({0}, {1})")]
    NonFinite(usize, usize),
    #[error("matrix is singular at the configured tolerance: {0}")]
    Singular(String),
    #[error("pattern is not full-rank typical (complement is not bipartite)")]
    NotFullRankTypical,
    #[error("unsupported pattern: {0}")]
    UnsupportedPattern(String),
    #[error("missing value for specified entry {{{0}, {1}}}")]
    MissingValue(usize, usize),
    #[error("value given for unspecified entry {{{0}, {1}}}")]
    UnexpectedValue(usize, usize),
    #[error("non-generic input: {0}")]
    NonGeneric(String),
    #[error("operand is not certified all-completions-full-rank")]
    NotCertified,
    #[error("typical-rank report is not exact")]
    InexactReport,
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("no completion of rank at most {max} found")]
    RankNotReached { max: usize },
    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// `true` for errors caused by malformed or unsupported input, as opposed
    /// to numeric or genericity failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::VertexOutOfRange { .. }
                | Error::DuplicateEdge(..)
                | Error::TooManyVertices { .. }
                | Error::SearchLimit { .. }
                | Error::Dimension(_)
                | Error::NonFinite(..)
                | Error::NotFullRankTypical
                | Error::UnsupportedPattern(_)
                | Error::MissingValue(..)
                | Error::UnexpectedValue(..)
                | Error::NotCertified
                | Error::InexactReport
                | Error::Config(_)
        )
    }

    /// Short machine-readable kind string.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::VertexOutOfRange { .. } => "vertex-out-of-range",
            Error::DuplicateEdge(..) => "duplicate-edge",
            Error::TooManyVertices { .. } => "too-many-vertices",
            Error::SearchLimit { .. } => "search-limit",
            Error::Dimension(_) => "dimension",
            Error::NonFinite(..) => "non-finite",
            Error::Singular(_) => "singular",
            Error::NotFullRankTypical => "not-full-rank-typical",
            Error::UnsupportedPattern(_) => "unsupported-pattern",
            Error::MissingValue(..) => "missing-value",
            Error::UnexpectedValue(..) => "unexpected-value",
            Error::NonGeneric(_) => "non-generic-input",
            Error::NotCertified => "not-certified",
            Error::InexactReport => "inexact-report",
            Error::Config(_) => "config",
            Error::RankNotReached { .. } => "rank-not-reached",
            Error::NoConvergence(_) => "no-convergence",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
