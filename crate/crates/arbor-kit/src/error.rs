//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("coefficient domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("division by zero polynomial")]
    ZeroDivisor,

    #[error("zero input where a nonzero polynomial is required")]
    ZeroInput,

    #[error("degree cap {cap} exceeded (needed {needed})")]
    DegreeCapExceeded { cap: usize, needed: usize },

    #[error("enumeration cap {cap} exceeded")]
    OrderCapExceeded { cap: u64 },

    #[error("homomorphism enumeration cap {cap} exceeded")]
    HomCapExceeded { cap: u64 },

    #[error("factor recombination cap {cap} exceeded")]
    RecombinationCapExceeded { cap: u64 },

    #[error("alpha = {alpha} is strictly post-critical for {map}")]
    StrictlyPostCritical { map: String, alpha: String },

    #[error("map is not post-critically finite: {0}")]
    NotPcf(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("no admissible primes below {bound}")]
    NoAdmissiblePrimes { bound: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cache: {0}")]
    Cache(String),

    #[error("selftest failed:\n{0}")]
    SelftestFailed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DegreeCapExceeded { .. }
            | Error::OrderCapExceeded { .. }
            | Error::HomCapExceeded { .. }
            | Error::RecombinationCapExceeded { .. } => 3,
            Error::Parse(_) => 2,
            _ => 1,
        }
    }
}
