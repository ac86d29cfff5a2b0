use std::path::PathBuf;

use thiserror::Error;

use crate::lattice::EtaIndex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a negative fundamental discriminant")]
    NotFundamental(i64),

    #[error("{0} has no decomposition d*f^2 with d a negative fundamental discriminant")]
    NoDiscriminantSplit(i64),

    #[error("valuation of zero is undefined")]
    ZeroValuation,

    #[error("weight {0} is not an even integer >= 2")]
    InvalidWeight(i64),

    #[error("index {0} is not in the positive cone")]
    NotPositive(EtaIndex),

    #[error("mixed weights in a linear combination: {0} and {1}")]
    WeightMismatch(i64, i64),

    #[error("mixed precisions: {0} and {1}")]
    PrecisionMismatch(u32, u32),

    #[error("series is not a perfect square: mismatch at {0}")]
    NotSquare(EtaIndex),

    #[error("series is not divisible: mismatch at {0}")]
    NotDivisible(EtaIndex),

    #[error("leading coefficient condition violated at {0}")]
    BadLeadingTerm(EtaIndex),

    #[error("precision {got} is too small (need at least {need})")]
    PrecisionTooSmall { got: u32, need: u32 },

    #[error("dimension formula requires k >= 5, got {0}")]
    WeightOutOfRange(i64),

    #[error("{0} is not an odd prime")]
    InvalidPrime(i64),

    #[error("dimension formula returned a non-integral value {0} at k = {1}")]
    NonIntegralDimension(String, i64),

    #[error("unknown form identifier `{0}`")]
    UnknownForm(String),

    #[error("malformed rational `{0}`")]
    ParseRational(String),

    #[error("malformed record: {0}")]
    Record(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
