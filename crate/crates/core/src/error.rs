use thiserror::Error;

/// Errors raised by the library. Each variant maps onto one failure mode of
/// an operation; the CLI translates them into exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{p} is not prime")]
    CompositeModulus { p: u64 },
    #[error("modulus polynomial {coeffs:?} is reducible over F_{p}")]
    ReducibleModulus { p: u64, coeffs: Vec<u64> },
    #[error("ring is not a field")]
    NotAField,
    #[error("parse error at line {line}, column {col}: {msg}")]
    ParseError { line: usize, col: usize, msg: String },
    #[error("coefficient {value} is not a unit{}", context.as_ref().map(|c| format!(" ({c})")).unwrap_or_default())]
    NonUnitCoefficient { value: i64, context: Option<String> },
    #[error("seed subgrid is empty")]
    EmptySeed,
    #[error("level {level} needs {needed} column subsets, budget is {budget}")]
    LevelTooLarge { level: usize, needed: u128, budget: u128 },
    #[error("index sets overlap")]
    OverlappingIndexSets,
    #[error("index set is not a subset of the ambient set")]
    IndexNotSubset,
    #[error("operation needs {needed} steps, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("unknown prediction {0:?}")]
    UnknownPrediction(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("unsupported nilpotency class {0}")]
    UnsupportedClass(u32),
    #[error("characteristic {0} is too small")]
    BadCharacteristic(u64),
    #[error("generator {0:?} is not alternating")]
    NotAlternating(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
