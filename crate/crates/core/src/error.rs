use thiserror::Error;

use crate::game::Player;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("no mixed equilibrium for player {0}: opponent utility gains do not have opposite signs")]
    NoMixedEquilibrium(Player),

    #[error("unclassifiable degenerate game for player {0}: equilibrium set is neither finite nor the whole simplex")]
    UnclassifiableDegenerate(Player),

    #[error("degenerate game: {0}")]
    Degenerate(String),

    #[error("undefined {0} (zero-sum): the minimum equilibrium welfare is zero")]
    UndefinedRatio(&'static str),

    #[error("invalid scale factor {0}: must be strictly positive")]
    InvalidScale(f64),

    #[error("invalid probability {0}: must lie in [0, 1]")]
    InvalidProbability(f64),

    #[error("invalid tolerance {0}: must be finite and non-negative")]
    InvalidTolerance(f64),

    #[error("invalid ratio bounds: lower {lower} and upper {upper} must satisfy -inf <= lower <= upper <= 0")]
    InvalidRatioBounds { lower: f64, upper: f64 },

    #[error("invalid window ({0}, {1}): need 0 <= w1 <= w2 <= 1")]
    InvalidWindow(f64, f64),

    #[error("degenerate noise: {0}")]
    DegenerateNoise(String),

    #[error("invalid noise specification: {0}")]
    InvalidNoise(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("sampled game stayed degenerate after resampling was disabled")]
    DegenerateSample,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
