use alloc::string::String;

/// Errors raised by the algebra and the verification routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid root system type {family}{rank}")]
    InvalidType { family: String, rank: usize },
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("weight is not small (some pairing with a positive coroot exceeds 2): {0}")]
    NotSmall(String),
    #[error("invalid multiplicities: {0}")]
    InvalidMultiplicities(String),
    #[error("denominator vanishes at the spectral point ({0})")]
    PoleAtSpectralPoint(String),
    #[error("operand is not Weyl-invariant")]
    NotInvariant,
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
}

pub type Result<T> = core::result::Result<T, Error>;
