use thiserror::Error;

use crate::rootsystem::Series;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank {rank} is not valid for series {series}")]
    InvalidRank { series: Series, rank: usize },

    #[error("node {node} does not define a |1|-grading of {series}{rank}")]
    InvalidNode {
        series: Series,
        rank: usize,
        node: usize,
    },

    #[error("{0} has no node with highest-root coefficient 1, so no |1|-grading")]
    NoOneGrading(Series),

    #[error("grade error: {0}")]
    Grade(String),

    #[error("Killing pairing between g_1 and the given g_-1 basis is singular")]
    SingularPairing,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("jet order exhausted: cannot differentiate an order-0 jet")]
    OrderExhausted,

    #[error("jet order {found} is below the required minimum {min}")]
    InvalidOrder { min: usize, found: usize },

    #[error("fiber mismatch: {0}")]
    FiberMismatch(String),

    #[error("no simple root of the ideal is adjacent to the crossed node")]
    NoAdjacentRoot,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
