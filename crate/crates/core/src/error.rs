use thiserror::Error;

use crate::rootdata::Exclusion;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of size {p}^{m} exceeds the bound {bound}")]
    FieldTooLarge { p: u64, m: u32, bound: u64 },
    #[error("F_{p}^{from} is not a subfield of F_{p}^{to}")]
    NotSubfield { p: u64, from: u32, to: u32 },
    #[error("characteristic mismatch: {0} vs {1}")]
    CharacteristicMismatch(u64, u64),
    #[error("discrete logarithm of zero")]
    DlogOfZero,
    #[error("invalid root datum: {0}")]
    InvalidRootDatum(String),
    #[error("unsupported twist: {0}")]
    UnsupportedTwist(String),
    #[error("{0}")]
    Excluded(Exclusion),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("scale bound exceeded: {0}")]
    ScaleBound(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
