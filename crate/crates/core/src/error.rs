use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid simple type `{0}`: expected <family><rank> with A1+, B2+, C2+, D3+, E6-E8, F4, G2")]
    InvalidType(String),

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("representation with highest weight {weight:?} has dimension {dim}, above the cap {cap}")]
    OverCap { weight: Vec<i64>, dim: String, cap: usize },

    #[error("node {node} out of range 1..={rank}")]
    BadNode { node: usize, rank: usize },

    #[error("{0}")]
    OutOfRange(String),

    #[error("objects belong to different Lie algebras or variable spaces")]
    BasisMismatch,

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("scale factor must be nonzero")]
    ZeroScale,

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
