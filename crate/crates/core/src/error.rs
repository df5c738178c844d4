use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("block length must be at least 1")]
    EmptyBlock,

    #[error("dimension mismatch: expected block length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("offsets {offsets:?} are not weakly increasing within [0, {bound}]")]
    InvalidOffsets { offsets: Vec<u32>, bound: u32 },

    #[error("offset tuple of weight {h} and bound {bound} does not fit block length {w}")]
    BoundMismatch { h: usize, bound: u32, w: usize },

    #[error("weight {h} out of range for block length {w}")]
    WeightOutOfRange { h: usize, w: usize },

    #[error("offset tuples differ in weight or bound")]
    ShapeMismatch,

    #[error("invalid skew pattern {sigmas:?}")]
    InvalidSkew { sigmas: Vec<i8> },

    #[error("invalid bit string {0:?}")]
    InvalidBitString(String),

    #[error("invalid offset list {0:?}")]
    InvalidOffsetList(String),

    #[error("block length {w} exceeds the exhaustive-search limit {limit}")]
    GuardExceeded { w: usize, limit: usize },

    #[error("component with {vertices} vertices exceeds the exact search limit {limit}")]
    ComponentTooLarge { vertices: usize, limit: usize },

    #[error("message index {index} out of range [0, {size})")]
    MessageOutOfRange { index: u128, size: u128 },

    #[error("word is not a codeword: offsets {offsets:?} are not all even")]
    NotCodeword { offsets: Vec<u32> },

    #[error("parity violation at arrival {pulse} (half-slot index {arrival})")]
    ParityViolation { pulse: usize, arrival: i64 },

    #[error("codebook for block length {w} is too large to index (limit {limit})")]
    CodebookTooLarge { w: usize, limit: usize },
}
