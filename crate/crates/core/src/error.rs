use thiserror::Error;

/// Failures raised by the exact arithmetic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,

    /// A nonzero element whose regular representation is singular. In a
    /// division algebra this can never happen, so it is always fatal.
    #[error("singular regular representation for a nonzero element (zero divisor)")]
    ZeroDivisor,

    #[error("singular linear system")]
    Singular,

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    #[error("no witness: {0}")]
    NoWitness(String),

    #[error("relation {name} fails for the supplied automorphism data")]
    RelationFailed { name: &'static str },
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
