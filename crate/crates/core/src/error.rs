use thiserror::Error;

/// Errors raised by poset construction and by the order-theoretic checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relation has a directed cycle through `{0}`")]
    Cycle(String),
    #[error("cover pair `{0}` -> `{1}` is implied transitively")]
    NotReduced(String, String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("`{0}` is not below `{1}`")]
    NotComparable(String, String),
    #[error("poset is not bounded")]
    NotBounded,
    #[error("poset is not graded")]
    NotGraded,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("invalid labelling: {0}")]
    InvalidLabelling(String),
    #[error("chain is not left modular: {0}")]
    NotLeftModular(String),
    #[error("chain is not viable: {0}")]
    NotViable(String),
    #[error("labelling is not EL: {0}")]
    NotElLabelled(String),
    #[error("not a linear extension: {0}")]
    NotLinearExtension(String),
    #[error("partition `{0}` is straddling")]
    NotNonStraddling(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
