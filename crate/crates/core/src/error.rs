use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter violated the documented domain of an operation.
    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("{what} = {value} exceeds the configured limit {limit}")]
    Capacity {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("usage: {0}")]
    Usage(String),

    #[error("quadrature did not converge: estimated error {achieved:e} exceeds tolerance {requested:e}")]
    Convergence { achieved: f64, requested: f64 },

    /// Root isolation found fewer real roots (with multiplicity) than the degree.
    #[error("polynomial of degree {degree} has {found} real roots counted with multiplicity")]
    NonRealSpectrum { degree: usize, found: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
