use alloc::string::String;

use crate::coxeter::Variant;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse exact value from {0:?}")]
    Parse(String),
    #[error("cannot add surds with radicands {left} and {right}")]
    RadicandMismatch { left: u64, right: u64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("operation requires the {expected:?} variant")]
    VariantMismatch { expected: Variant },
    #[error("rank {rank} too small (need at least {min})")]
    RankTooSmall { rank: usize, min: usize },
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("closed formula not valid here: {0}")]
    OutOfValidityRange(String),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("candidate normals do not close the boundary: {0}")]
    IncompleteFacets(String),
    #[error("face counts missing for dimension {0}")]
    MissingCounts(usize),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("no face falls inside the window")]
    EmptyWindow,
    #[error("verification failed: {0}")]
    VerificationFailure(String),
}
