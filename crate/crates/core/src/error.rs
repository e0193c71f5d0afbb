use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The function is not negative enough on the lower interval to certify
    /// anything at this `(k, z)`.
    #[error("infeasible certificate: {0}")]
    InfeasibleCertificate(String),

    #[error("no feasible certificate found for k = {k}, z = {z} with {terms} terms")]
    NoFeasiblePoint { k: u32, z: f64, terms: usize },

    #[error("graph is disconnected")]
    DisconnectedGraph,

    #[error("graph is not regular")]
    NotRegular,

    #[error("unknown atlas name `{0}`")]
    UnknownName(String),

    #[error("malformed graph6 at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("vertex bound {required} exceeds the enumeration budget of {budget} vertices")]
    BudgetExceeded { required: u64, budget: usize },

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit status used by the CLI: 2 for bad input or infeasible
    /// parameters, 3 when the compute budget is exceeded, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter(_)
            | Error::InfeasibleCertificate(_)
            | Error::NoFeasiblePoint { .. }
            | Error::DisconnectedGraph
            | Error::NotRegular
            | Error::UnknownName(_)
            | Error::Graph6 { .. } => 2,
            Error::BudgetExceeded { .. } => 3,
            Error::Internal(_) | Error::Io(_) | Error::Json(_) => 1,
        }
    }
}
