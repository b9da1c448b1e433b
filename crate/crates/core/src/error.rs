use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed rational {0:?}")]
    MalformedRational(String),

    #[error("series mismatch: {0}")]
    SeriesMismatch(String),

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("constant term must be {expected}, found {found}")]
    ConstantTerm { expected: String, found: String },

    #[error("series division by monomial is not exact at {0}")]
    InexactDivision(String),

    #[error("invalid partition or vector: {0}")]
    InvalidIndex(String),

    #[error("missing Chern number {0}")]
    MissingChernNumber(String),

    #[error("invalid Chern data: {0}")]
    InvalidChernData(String),

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("wrong basis: {0}")]
    WrongBasis(String),

    #[error("generator {generator} lies outside the theory caps {caps}")]
    OutsideCaps { generator: String, caps: String },

    #[error("invalid theory: {0}")]
    InvalidTheory(String),

    #[error("residual pole: {0}")]
    ResidualPole(String),

    #[error("inconsistent evaluation paths: {0}")]
    PathDisagreement(String),

    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),

    #[error("missing parameter {0:?}")]
    MissingParameter(String),

    #[error("parse error: {0}")]
    Parse(String),
}
