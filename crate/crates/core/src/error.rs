use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad failure classes; the CLI maps them onto exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad input: non-prime characteristic, reducible conductor, malformed polynomial, ...
    Validation,
    /// Enumeration or brute-force budget exceeded.
    Resource,
    /// An arithmetic identity that must hold exactly did not.
    Verification,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid extension degree {0}")]
    InvalidDegree(i64),
    #[error("field of size {size} exceeds the table limit {limit}")]
    FieldTooLarge { size: u64, limit: u64 },
    #[error("{0}: zero polynomial not allowed")]
    ZeroPolynomial(&'static str),
    #[error("polynomial {poly} is reducible (factor {factor})")]
    Reducible { poly: String, factor: String },
    #[error("polynomial {poly} is not monic")]
    NotMonic { poly: String },
    #[error("{a} is not coprime to {p}")]
    NotCoprime { a: String, p: String },
    #[error("{0} is not a one-unit")]
    NotOneUnit(String),
    #[error("precision must be at least 1 (got {0})")]
    BadPrecision(u32),
    #[error("resource ceiling exceeded: {what} needs {needed}, limit is {limit}")]
    ResourceCeiling { what: String, needed: u64, limit: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("character of type 3 is unsupported here")]
    TypeThreeUnsupported,
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("value is not an integer at working precision: {0}")]
    NotIntegral(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("cache i/o: {0}")]
    Io(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::ResourceCeiling { .. } | Error::FieldTooLarge { .. } => ErrorKind::Resource,
            Error::InexactDivision(_)
            | Error::NotIntegral(_)
            | Error::PrecisionExhausted(_)
            | Error::Verification(_) => ErrorKind::Verification,
            Error::Io(_) => ErrorKind::Resource,
            _ => ErrorKind::Validation,
        }
    }

    pub(crate) fn ceiling(what: impl Into<String>, needed: u64, limit: u64) -> Self {
        Error::ResourceCeiling { what: what.into(), needed, limit }
    }
}
