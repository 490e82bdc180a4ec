use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("ordinary form: v_p(a_p) = 0")]
    OrdinaryForm,
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable mismatch: {0} vs {1}")]
    VarMismatch(char, char),
    #[error("cyclotomic context mismatch")]
    ContextMismatch,
    #[error("tie at entry ({row},{col}): formula inapplicable")]
    Tie { row: usize, col: usize },
    #[error("undecidable comparison: {0}")]
    Undecidable(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("non-unit: {0}")]
    NonUnit(String),
    #[error("degenerate matrix: {0}")]
    Degenerate(String),
    #[error("zero series has no Weierstrass invariants")]
    ZeroSeries,
}

pub type Result<T> = std::result::Result<T, Error>;
