use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex id {id} out of range for graph with {n} vertices")]
    VertexOutOfRange { id: usize, n: usize },

    #[error("clique size must be at least 2, got {0}")]
    InvalidCliqueSize(usize),

    #[error("candidate vertex set is empty")]
    EmptyCandidate,

    #[error("candidate vertex set does not induce a connected subgraph")]
    DisconnectedCandidate,

    #[error("negative density threshold {0}")]
    NegativeThreshold(String),

    #[error("boundary instance {instance} has inside count {count}, expected 1..={max}")]
    BoundaryCount {
        instance: usize,
        count: usize,
        max: usize,
    },

    #[error("flow capacities exceed the 128-bit integer range")]
    CapacityOverflow,

    #[error("graph has {n} vertices, the brute-force oracle accepts at most {max}")]
    OracleTooLarge { n: usize, max: usize },

    #[error("unsupported pattern '{0}'")]
    UnsupportedPattern(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
