use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),

    #[error("gcd(q = {q}, n = {n}) != 1")]
    NotCoprime { q: u64, n: u64 },

    #[error("designed distance {delta} outside the closed-form range [2, {max}]")]
    DeltaOutOfRange { delta: u64, max: u64 },

    #[error("only {found} admissible cyclotomic cosets mod {n}, {requested} requested")]
    NotEnoughCosets { n: u64, requested: usize, found: usize },

    #[error("coset with leader {leader} is not admissible: {reason}")]
    InvalidCoset { leader: u64, reason: String },

    #[error("matrix is not regular: {axis} {index} has weight {weight}, expected {expected}")]
    NotRegular {
        axis: &'static str,
        index: usize,
        weight: usize,
        expected: usize,
    },

    #[error("stopping-set search estimate {estimate} exceeds work limit {limit}")]
    BudgetTooLarge { estimate: u128, limit: u128 },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("code has rate zero")]
    ZeroRate,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("inconsistent document: {0}")]
    Consistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn params(msg: impl Into<String>) -> Self {
        Error::InvalidParams(msg.into())
    }
}
