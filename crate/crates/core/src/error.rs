use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside the domain where a formula or family is defined.
    #[error("{what} out of domain: {detail}")]
    Domain { what: &'static str, detail: String },
    /// Root finding ran out of iterations or lost its bracket.
    #[error("root finding did not converge: {0}")]
    Convergence(String),
    #[error("path is not closed: {0}")]
    OpenPath(String),
    /// A feasible instance could not be drawn without overlaps; indicates an internal bug.
    #[error("infeasible embedding: {0}")]
    InfeasibleEmbedding(String),
    #[error("unmatched interface labels: {0}")]
    UnmatchedInterface(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A portrait cell failed; `source` is the solver error.
    #[error("portrait cell {index} at areas ({}, {}): {source}", areas[0], areas[1])]
    Cell { index: usize, areas: [f64; 2], source: Box<Error> },
}

impl Error {
    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain { what, detail: detail.into() }
    }

    /// The underlying error, looking through portrait cell context.
    pub fn root(&self) -> &Error {
        match self {
            Error::Cell { source, .. } => source.root(),
            e => e,
        }
    }
}
