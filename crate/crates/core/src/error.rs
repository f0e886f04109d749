use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field of order {order} exceeds the configured bound {bound}")]
    FieldTooLarge { order: u128, bound: u64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point is not in A_n: coordinates sum to {0}")]
    NotInAn(i128),
    #[error("duplicate element {0:?}")]
    DuplicateElement(Vec<u64>),
    #[error("element {0:?} does not belong to the group")]
    ElementOutOfRange(Vec<i64>),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("basis does not span a full-rank lattice")]
    RankDeficient,
    #[error("the set does not generate the group (generated subgroup has order {generated}, group has order {order})")]
    NotGenerating { generated: String, order: u64 },
    #[error("syndrome collision between shape points {first:?} and {second:?}")]
    SyndromeCollision { first: Vec<i64>, second: Vec<i64> },
    #[error("enumeration of {requested} items exceeds the limit {limit}")]
    EnumerationLimit { requested: String, limit: u64 },
    #[error("operation requires a cyclic group")]
    NotCyclic,
    #[error("set is not normalized: {0}")]
    NotNormalized(String),
    #[error("code does not come from a planar difference set")]
    NotPlanar,
    #[error("syndrome table radii ({table_plus}, {table_minus}) do not cover channel radii ({plus}, {minus})")]
    RadiusMismatch {
        table_plus: u32,
        table_minus: u32,
        plus: u32,
        minus: u32,
    },
    #[error("overload error set is empty")]
    EmptyOverloadSet,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cyclicity criteria disagree for code {0}")]
    ConjectureDisagreement(String),
    #[error("zero has no discrete logarithm")]
    LogOfZero,
    #[error("matrix is singular")]
    Singular,
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::NotPrimePower(_) => "NotPrimePower",
            Error::FieldTooLarge { .. } => "FieldTooLarge",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotInAn(_) => "NotInAn",
            Error::DuplicateElement(_) => "DuplicateElement",
            Error::ElementOutOfRange(_) => "ElementOutOfRange",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::RankDeficient => "RankDeficient",
            Error::NotGenerating { .. } => "NotGenerating",
            Error::SyndromeCollision { .. } => "SyndromeCollision",
            Error::EnumerationLimit { .. } => "EnumerationLimit",
            Error::NotCyclic => "NotCyclic",
            Error::NotNormalized(_) => "NotNormalized",
            Error::NotPlanar => "NotPlanar",
            Error::RadiusMismatch { .. } => "RadiusMismatch",
            Error::EmptyOverloadSet => "EmptyOverloadSet",
            Error::Parse(_) => "ParseError",
            Error::Overflow(_) => "Overflow",
            Error::Precondition(_) => "Precondition",
            Error::ConjectureDisagreement(_) => "ConjectureDisagreement",
            Error::LogOfZero => "LogOfZero",
            Error::Singular => "Singular",
        }
    }
}
