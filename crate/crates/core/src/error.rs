use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("variable sets differ: [{0}] vs [{1}]")]
    VarMismatch(String, String),
    #[error("incompatible square-root fields: sqrt({0}) and sqrt({1})")]
    FieldMismatch(BigInt, BigInt),
    #[error("square root of negative number {0}")]
    NegativeRadicand(String),
    #[error("radicand {0} too large to reduce")]
    RadicandTooLarge(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable index {index} out of range for {nvars} variables")]
    VarOutOfRange { index: usize, nvars: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("singular matrix")]
    Singular,
    #[error("invalid jet map: {0}")]
    InvalidJetMap(String),
    #[error("malformed structure constants: {0}")]
    MalformedAlgebra(String),
    #[error("algebra is not left-symmetric")]
    NotLeftSymmetric,
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("invalid normal form: {0}")]
    InvalidNormalForm(String),
    #[error("point is not of scalar type")]
    NotScalarPoint,
    #[error("internal verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    InvalidInput(String),
    #[error("operator is not Nijenhuis up to degree {0}")]
    NotNijenhuis(usize),
    #[error("{0} has no polynomial counterexample: it is non-degenerate")]
    NotDegenerate(String),
    #[error("{0} has no polynomial counterexample: witness is a flat function")]
    NotRepresentable(String),
    #[error("inconsistent system: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
