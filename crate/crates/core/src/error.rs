use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation bounds differ: {left} vs {right}")]
    BoundMismatch { left: usize, right: usize },

    #[error("malformed degree type at byte {position}: {message}")]
    ParseType { position: usize, message: String },

    #[error("invalid degree type: {0}")]
    InvalidType(String),

    #[error("variable counts differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("{0} is not an odd prime below 2^31")]
    NotPrime(u64),

    #[error("at most {max} variables are supported, got {got}")]
    TooManyVariables { got: usize, max: usize },

    #[error("exponent {0} does not fit the monomial representation")]
    ExponentOverflow(u32),

    #[error("degree {degree} exceeds the Gröbner basis cap {cap}")]
    DegreeAboveCap { degree: u32, cap: u32 },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("the unit monomial has no largest variable index")]
    UnitMonomial,

    #[error("expected r = n, got n = {n}, r = {r}")]
    NotSquare { n: usize, r: usize },

    #[error("matrix rank {achieved} is below the required {target}")]
    RankDeficient { achieved: usize, target: usize },

    #[error(
        "step {step}: only {found} independent columns inside the leading block of width {block}, expected {expected}"
    )]
    ColumnsOutsideBlock {
        step: u32,
        found: usize,
        expected: usize,
        block: usize,
    },

    #[error(
        "genericity guard gave up after {attempts} samples: degree {degree} has Hilbert function {found}, expected {expected}"
    )]
    GuardExhausted {
        attempts: u32,
        degree: usize,
        expected: i64,
        found: i64,
    },

    #[error("{0}")]
    Precondition(String),
}
