use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::surface::DivisorClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be positive, got {0}")]
    NonPositiveRank(i64),
    #[error("Euler characteristic {0} is not an integer; no sheaf has this character")]
    NonIntegralChi(BigRational),
    #[error("polarization {0} is not ample")]
    NonAmplePolarization(DivisorClass),
    #[error("discriminant {0} is negative; the prioritary stack is empty")]
    NegativeDiscriminant(BigRational),
    #[error("rank-one character with positive discriminant and slope·F < -1 is not covered by the Betti computation")]
    UnsupportedRankOne,
    #[error("global generation requires rank at least 2, got {0}")]
    RankTooSmall(i64),
    #[error("total slope is not nef ({0}); a globally generated bundle has nef c1")]
    NonNefSlope(String),
    #[error("Lazarsfeld-Mukai character needs chi > rank, got chi = {chi}, rank = {rank}")]
    NonPositiveMukaiRank { chi: BigInt, rank: i64 },
    #[error("direct-sum model has both h0 and h1 before modification; no prediction")]
    AmbiguousModification,
    #[error("internal: {0}")]
    Internal(String),
}

/// How a caller should treat an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// The input is not a valid character.
    Invalid,
    /// A valid character outside the hypotheses of the classifier.
    Unsupported,
    Internal,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::NonPositiveRank(_) | Error::NonIntegralChi(_) | Error::NonAmplePolarization(_) => {
                ErrorClass::Invalid
            }
            Error::NegativeDiscriminant(_)
            | Error::UnsupportedRankOne
            | Error::RankTooSmall(_)
            | Error::NonNefSlope(_)
            | Error::NonPositiveMukaiRank { .. }
            | Error::AmbiguousModification => ErrorClass::Unsupported,
            Error::Internal(_) => ErrorClass::Internal,
        }
    }

    /// Short machine label for the failed condition.
    pub fn label(&self) -> &'static str {
        match self {
            Error::NonPositiveRank(_) => "NonPositiveRank",
            Error::NonIntegralChi(_) => "NonIntegralChi",
            Error::NonAmplePolarization(_) => "NonAmplePolarization",
            Error::NegativeDiscriminant(_) => "NegativeDiscriminant",
            Error::UnsupportedRankOne => "UnsupportedRankOne",
            Error::RankTooSmall(_) => "RankTooSmall",
            Error::NonNefSlope(_) => "NonNefSlope",
            Error::NonPositiveMukaiRank { .. } => "NonPositiveMukaiRank",
            Error::AmbiguousModification => "AmbiguousModification",
            Error::Internal(_) => "Internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
