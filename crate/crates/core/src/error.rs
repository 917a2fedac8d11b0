use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coordinate index {index} out of range for dimension {dim}")]
    InvalidIndex { index: usize, dim: usize },

    #[error("empty input set: {0}")]
    EmptySet(&'static str),

    #[error("set is not core-solid: {0}")]
    NotCoreSolid(&'static str),

    #[error("set is not absorbing (origin is not in its core)")]
    NotAbsorbing,

    #[error("point is not in the set: {0}")]
    PointNotInSet(&'static str),

    #[error("point is not on the graph of the mapping")]
    PointOffGraph,

    #[error("point is outside the domain of the function")]
    NotInDomain,

    #[error("improper function: {0}")]
    ImproperFunction(&'static str),

    #[error("marginal function takes the value -inf")]
    UnboundedBelow,

    #[error("point is not a minimizer of the marginal problem")]
    NotAMinimizer,

    #[error("argmin set is empty at the given point")]
    EmptyArgmin,

    #[error("invalid sum decomposition of the output point")]
    InvalidDecomposition,

    #[error("point is not an intermediate point of the composition")]
    InvalidIntermediatePoint,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
