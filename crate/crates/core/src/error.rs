use thiserror::Error;

/// Errors raised by the library. Every fallible public operation returns
/// this type so the CLI can map failures to a single exit path.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("vertex index {index} out of range 1..={n}")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("index list must be strictly increasing (position {position})")]
    NotIncreasing { position: usize },

    #[error("parameter {name} out of range: {detail}")]
    ParameterOutOfRange { name: &'static str, detail: String },

    #[error("exact computation exceeds the configured cap: {0}")]
    CapExceeded(String),

    #[error("coloring is not admissible")]
    NotAdmissible,

    #[error("order relation contains a cycle through element {0}")]
    CyclicOrder(usize),

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("parameters infeasible: {0}")]
    ParameterInfeasible(String),

    #[error("density precondition violated: {0}")]
    DensityPrecondition(String),

    #[error("VC-dimension precondition violated: {0}")]
    VcPrecondition(String),

    #[error("biclique oracle failed on pattern edge ({0}, {1})")]
    OracleFailure(usize, usize),

    #[error("not a clique: {0}")]
    NotAClique(String),

    #[error("{0}")]
    NotFound(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
