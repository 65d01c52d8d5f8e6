use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An intermediate value does not fit the supported 128-bit width.
    #[error("value exceeds the supported 128-bit width: {0}")]
    WidthOverflow(String),

    #[error("{0} is not prime")]
    NotPrime(u128),

    #[error("{d} does not divide {n}")]
    NotADivisor { d: u128, n: u128 },

    #[error("{n} exceeds the enumeration limit {limit}")]
    ScaleGuard { n: String, limit: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed record: {0}")]
    Parse(String),

    #[error("checkpoint {path}: {reason}")]
    Checkpoint { path: PathBuf, reason: String },

    /// The sieve reported a hit that independent factorization does not confirm.
    #[error("sieve value for n={n} disagrees with direct evaluation ({sieve} vs {direct})")]
    SieveMismatch { n: u64, sieve: String, direct: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
