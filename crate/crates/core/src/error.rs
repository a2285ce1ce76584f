use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimensions: {0}")]
    InvalidDims(String),

    #[error("unknown graph family '{0}'")]
    UnknownFamily(String),

    #[error("unsupported family for this operation: {0}")]
    UnsupportedFamily(String),

    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed LP: {0}")]
    MalformedLp(String),

    #[error("simplex exceeded {0} iterations")]
    IterationLimit(usize),

    #[error("enumeration needs {needed} combinations, budget is {budget}")]
    EnumerationBudget { needed: u128, budget: u128 },

    #[error("{0} vertices exceed the weight-matrix cap of {1}")]
    TooLarge(usize, usize),

    #[error("nonpositive denominator {0}")]
    NonpositiveDenominator(f64),

    #[error("solver budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
