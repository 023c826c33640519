use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("v must be a unit")]
    NotAUnit,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("generator index {index} out of range for {n} strands")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("black box of size {m} does not fit on {n} strands")]
    BoxOutOfRange { n: usize, m: usize },
    #[error("Jacobsthal index {l} out of range for {n} strands")]
    JacobsthalOutOfRange { n: usize, l: usize },
    #[error("invalid Dyck word `{0}`")]
    InvalidDyckWord(String),
    #[error("too many strands: {0} (at most {max})", max = crate::diagram::MAX_STRANDS)]
    TooManyStrands(usize),
    #[error("invalid partition: columns ({c1}, {c2})")]
    InvalidPartition { c1: usize, c2: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("at least two distinct nonzero specialization points are required")]
    NotEnoughPoints,
    #[error("specialization ranks disagree in degree {degree}: {ranks:?}")]
    SpecializationDisagreement { degree: i64, ranks: Vec<usize> },
}

pub type Result<T> = std::result::Result<T, Error>;
