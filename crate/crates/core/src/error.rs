use thiserror::Error;

use crate::algebra::Domain;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition {0:?}: parts must be weakly decreasing")]
    InvalidPartition(Vec<usize>),
    #[error("invalid filling: {0}")]
    InvalidFilling(String),
    #[error("coefficient domain mismatch: {0} vs {1}")]
    DomainMismatch(Domain, Domain),
    #[error("ambient rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("operation requires a field, got {0}")]
    NotAField(Domain),
    #[error("entry ({row}, {col}) is not homogeneous of degree {expected}")]
    NotHomogeneous { row: usize, col: usize, expected: i64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("no shuffle relation at row {row}, column {col} of shape {shape:?}")]
    InvalidBox { row: usize, col: usize, shape: Vec<usize> },
    #[error("cannot remove a box from row {row} of {shape:?}")]
    NotRemovable { row: usize, shape: Vec<usize> },
    #[error("removal step {step} (row {row}) fails on shape {shape:?}")]
    InvalidRemovalPlan { step: usize, row: usize, shape: Vec<usize> },
    #[error("singular group element")]
    Singular,
    #[error("invalid degree sequence {0:?}: {1}")]
    InvalidDegreeSequence(Vec<i64>, String),
    #[error("module is not of finite length within degree bound {0}")]
    NotFiniteLength(i64),
    #[error("Betti table is not pure")]
    NotPure,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("straightening did not terminate within {0} rewrites")]
    StraighteningDiverged(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
