use thiserror::Error;

use crate::quadring::QuadError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("malformed graph: {0}")]
    MalformedGraph(String),
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("length cap {0} exceeded before all generators became descents")]
    CapExceeded(usize),
    #[error("element cap {0} exceeded while building the ball")]
    ElementCapExceeded(usize),
    #[error("root set is not biclosed")]
    NotBiclosed,
    #[error("element of length {length} lies outside the ball of radius {radius}")]
    OutsideBall { length: usize, radius: usize },
    #[error("element is not a prefix of the top element")]
    NotAPrefix,
    #[error("weak order lattice violation: {0}")]
    LatticeViolation(String),
    #[error("pair is not a bipartition")]
    NotABipartition,
    #[error("repeated letter {0} in word")]
    RepeatedLetter(i32),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("letter set is not symmetric")]
    SetNotSymmetric,
    #[error("letter set is not antisymmetric")]
    SetNotAntisymmetric,
    #[error("n is not in positive position")]
    NNotPositive,
    #[error("n is not in negative position")]
    NNotNegative,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
