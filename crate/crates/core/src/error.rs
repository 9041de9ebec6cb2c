use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix size {0} is odd")]
    OddSize(usize),
    #[error("det(A - A^T) = {0}, expected 1")]
    NotUnimodularSkew(String),
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("polynomial is not symmetric up to units")]
    NotSymmetric,
    #[error("value at t = 1 is {0}, expected +1 or -1")]
    NotUnitAtOne(String),
    #[error("evaluation angle {0} sits on a jump")]
    AtJump(String),
    #[error("root e^(2*pi*i*{r}/{d}) lands on a jump")]
    JumpCollision { r: i64, d: i64 },
    #[error("crossing count {0} is below 3")]
    CrossingTooSmall(i64),
    #[error("tower height {0} is below 2")]
    TowerTooShort(i64),
    #[error("empty index subset")]
    EmptySubset,
    #[error("subset index {0} out of range")]
    SubsetIndex(usize),
    #[error("search exhausted after {0} candidates")]
    SearchExhausted(u64),
    #[error("verification check '{check}' failed: {witness}")]
    Verification { check: String, witness: String },
    #[error("no realization found: {0}")]
    Unrealizable(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
