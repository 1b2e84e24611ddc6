use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid rational `{0}` (expected p/q or p)")]
    Rational(String),
    #[error("invalid half-integer `{0}` (expected p/2 or p)")]
    HalfInteger(String),
    #[error("invalid fermion mode `{0}` (expected odd p in p/2)")]
    Mode(String),
    #[error("unknown operator token `{0}`")]
    UnknownToken(String),
    #[error("malformed expression: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FockError {
    #[error("monomial indices must be strictly increasing, got {0:?}")]
    NotCanonical(Vec<u32>),
    #[error("partition parts must be positive and non-increasing, got {0:?}")]
    BadPartition(Vec<u32>),
    #[error("deg_h of {monomial} is not a non-negative integer (twice-weight excess {excess})")]
    FractionalEnergy { monomial: String, excess: i64 },
    #[error("summand with left mode {mode} acts nonzero on {monomial} but lies outside the support bound")]
    SupportViolation { mode: String, monomial: String },
}
