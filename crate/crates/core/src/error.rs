use thiserror::Error;

/// Errors raised by state construction, measure evaluation and the roof solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid qubit subset {indices:?} for {n_qubits} qubits: {reason}")]
    InvalidSubset {
        indices: Vec<usize>,
        n_qubits: usize,
        reason: &'static str,
    },

    #[error("expected a {expected}-qubit state, got {actual} qubits")]
    QubitCount { expected: usize, actual: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("{name} = {value} is outside {domain}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("unknown state name `{0}`")]
    UnknownState(String),

    #[error("mismatched qubit counts: {0} vs {1}")]
    Mismatch(usize, usize),

    #[error("degenerate family: {0}")]
    DegenerateFamily(&'static str),

    #[error("family is singular at p = {p}")]
    SingularFamily { p: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("no interior stationary point in [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    #[error("at (p = {p}, phi = {phi}): {source}")]
    AtGridPoint {
        p: f64,
        phi: f64,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
