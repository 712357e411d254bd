use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown group `{name}`; available: {available}")]
    UnknownGroup { name: String, available: String },

    #[error("irrep dimensions square-sum to {sum}, but the group order is {order}")]
    DimensionCount { order: u64, sum: u64 },

    #[error("dims[0] must be 1 (the trivial representation), got {0}")]
    TrivialRep(u64),

    #[error("order must be at least 2, got {0}")]
    TrivialGroup(u64),

    #[error("irrep dimensions must be positive")]
    ZeroDimension,

    #[error(
        "number of 1-dimensional irreps ({abelian_order}) does not divide the order ({order})"
    )]
    AbelianOrder { order: u64, abelian_order: u64 },

    #[error("irrep index {index} out of range for a group with {count} irreps")]
    IrrepOutOfRange { index: u32, count: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("vector has support at level {level}, but the truncation level is {max}")]
    Truncation { level: usize, max: usize },

    #[error("level matrix would have {cols} columns, over the budget of {budget}")]
    Budget { cols: u128, budget: u128 },

    #[error("direct-sum claim fails at level {levels}: determinant {det}")]
    ClaimViolation { levels: usize, det: String },

    #[error("group {0} is not abelian; full-shift functions need an abelian group")]
    NonAbelian(String),
}

pub type Result<T> = std::result::Result<T, Error>;
