use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("generator of degree {found} in a group of degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group order exceeds the element cap of {cap}")]
    CapExceeded { cap: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("invalid exact factorization: {0}")]
    InvalidFactorization(String),
    #[error("cocycle validation failed: {0}")]
    CocycleInvalid(String),
    #[error("value is not a root of unity of order {order}: {value}")]
    NotRootOfUnity { order: u32, value: String },
    #[error("bialgebra has no antipode: {0}")]
    NoAntipode(String),
    #[error("twist axioms violated: {0}")]
    InvalidTwist(String),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("semisimple decomposition failed: {0}")]
    Decomposition(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("search space too large: {0}")]
    SearchTooLarge(String),
    #[error("parse error at line {line}: {msg}")]
    ParseAt { line: usize, msg: String },
    #[error("parse error: {0}")]
    Parse(String),
}
