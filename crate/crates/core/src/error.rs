use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("dimension mismatch in {op}: {left} vs {right}")]
    DimensionMismatch {
        op: &'static str,
        left: usize,
        right: usize,
    },

    #[error("quotient requested for a non-nested pair of subspaces")]
    NotNested,

    #[error("invalid algebra data: {0}")]
    InvalidAlgebra(String),

    #[error("action mismatch: {0}")]
    ActionMismatch(String),

    #[error("quiver has a directed cycle")]
    CyclicQuiver,

    #[error("invalid level assignment: {0}")]
    InvalidLevels(String),

    #[error("empty simplicial complex")]
    EmptyComplex,

    #[error("oracle budget exceeded: {required} entries required, budget is {budget}")]
    BudgetExceeded { required: u64, budget: u64 },

    #[error("input is not a cocycle: {0}")]
    NotCocycle(String),

    #[error("malformed cell: {0}")]
    MalformedCell(String),

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
