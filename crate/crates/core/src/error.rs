//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Hopf algebra definition: {0}")]
    InvalidHopf(String),
    #[error("group element {0} is out of range")]
    UnknownGroupElement(usize),
    #[error("generator index {0} is out of range")]
    UnknownGenerator(usize),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("canonical form requires arity at least 2, found {0}")]
    ArityTooSmall(usize),
    #[error("not a permutation of 0..{0}")]
    BadPermutation(usize),
    #[error("module index {index} is out of range for rank {rank}")]
    ModuleIndex { index: usize, rank: usize },
    #[error("monomial does not belong to this Hopf algebra: {0}")]
    ForeignMonomial(String),
    #[error("dual element is only known up to degree {valid}, but degree {needed} was requested")]
    ValidityExceeded { valid: u32, needed: u32 },
    #[error("operator is not invertible: {0}")]
    NotInvertible(String),
    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("averaging polynomials must have zero constant term")]
    ConstantTerm,
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
