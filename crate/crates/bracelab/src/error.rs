use thiserror::Error;

/// Errors produced anywhere in the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operation table is not a Latin square (line {index})")]
    NotLatinSquare { index: usize },

    #[error("operation table has no two-sided identity")]
    NoIdentity,

    #[error("associativity fails at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("element {x} has no two-sided inverse")]
    NoInverse { x: usize },

    #[error("action maps do not compose homomorphically")]
    ActionNotHomomorphism,

    #[error("action map is not an automorphism")]
    ActionNotAutomorphism,

    #[error("additive table: {0}")]
    AddNotGroup(Box<Error>),

    #[error("multiplicative table: {0}")]
    CircNotGroup(Box<Error>),

    #[error("the two operations have different identity elements")]
    IdentityMismatch,

    #[error("compatibility law fails at ({a}, {b}, {c})")]
    CompatibilityFailed { a: usize, b: usize, c: usize },

    #[error("not an ideal: {0}")]
    NotIdeal(String),

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("lambda graph does not have exactly one vertex")]
    NotOneVertex,

    #[error("no classification family matches: {0}")]
    NoFamilyMatch(String),

    #[error("the given subset does not generate the solution")]
    NotGenerating,

    #[error("the restriction to the given subset is not a solution")]
    NotSubsolution,

    #[error("order {0} is not supported by this operation")]
    UnsupportedOrder(usize),

    #[error("budget exceeded during {operation} (limit {limit})")]
    BudgetExceeded { operation: String, limit: u64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal consistency violation: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
