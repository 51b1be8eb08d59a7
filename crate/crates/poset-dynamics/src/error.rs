use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cover relation contains a cycle through elements {0:?}")]
    CycleDetected(Vec<usize>),

    #[error("poset has {size} elements but the dense bit-set representation holds at most {cap}")]
    TooManyElements { size: usize, cap: usize },

    #[error("element index {index} out of range for a poset with {size} elements")]
    ElementOutOfRange { index: usize, size: usize },

    #[error("subset is not an order ideal: element {element} is present but element {missing} below it is not")]
    NotAnIdeal { element: usize, missing: usize },

    #[error("subset is not an antichain: elements {0} and {1} are comparable")]
    NotAnAntichain(usize, usize),

    #[error(
        "poset is not ranked: cover ({lower}, {upper}) joins rank {lower_rank} to rank {upper_rank}; \
         witness chains {chain_via_lower:?} and {chain_to_upper:?} reach {upper} with different lengths"
    )]
    NotRanked {
        lower: usize,
        upper: usize,
        lower_rank: usize,
        upper_rank: usize,
        chain_via_lower: Vec<usize>,
        chain_to_upper: Vec<usize>,
    },

    #[error("action did not return to the starting ideal within {bound} steps; it is not a bijection on J(P)")]
    ActionNotBijective { bound: usize },

    #[error("orbit is empty")]
    EmptyOrbit,

    #[error("invalid alternating sign matrix: {0}")]
    InvalidAsm(String),

    #[error("invalid height function matrix: {0}")]
    InvalidHeightFunction(String),

    #[error("invalid corner sum matrix: {0}")]
    InvalidCornerSum(String),

    #[error("order parameter must be at least 1, got {0}")]
    OrderTooSmall(usize),

    #[error("chain index ({i}, {j}) out of range 1..={max} for order {n}")]
    ChainIndexOutOfRange { n: usize, i: usize, j: usize, max: usize },

    #[error("malformed fully-packed loop configuration: {0}")]
    MalformedFpl(String),

    #[error("invalid link pattern: {0}")]
    InvalidLinkPattern(String),

    #[error("probability must satisfy 0 < p < 1, got {0}")]
    ProbabilityOutOfRange(String),

    #[error("stationary distribution is not unique: the chain is reducible (null space dimension {0})")]
    NonUniqueStationary(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
