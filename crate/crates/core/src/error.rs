use thiserror::Error;

/// Every failure the engine can report. The variant name doubles as the
/// stable error identifier printed by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("NotDivisible: {0}")]
    NotDivisible(String),
    #[error("ZeroNumerator: a Laurent fraction needs a nonzero numerator")]
    ZeroNumerator,
    #[error("DenominatorVanishes: {0}")]
    DenominatorVanishes(String),
    #[error("DivisionByZero: {0}")]
    DivisionByZero(String),
    #[error("SyntaxError at offset {offset}: expected one of {}", .expected.join(", "))]
    SyntaxError { offset: usize, expected: Vec<String> },
    #[error("InvalidExchange: m = {m}, n = {n} is not skew-symmetrizable (m = 0 iff n = 0)")]
    InvalidExchange { m: u32, n: u32 },
    #[error("IndexOutOfRange: direction {index} for a matrix of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("UnsupportedRegime: {0}")]
    UnsupportedRegime(String),
    #[error("ConstantInput: a mutation invariant must be non-constant")]
    ConstantInput,
    #[error("InfiniteType: (m, n) = ({m}, {n}) has infinitely many clusters")]
    InfiniteType { m: u32, n: u32 },
    #[error("NotSymmetric: {0}")]
    NotSymmetric(String),
    #[error("NotInvariant: {0}")]
    NotInvariant(String),
    #[error("NotLaurent: {0}")]
    NotLaurent(String),
    #[error("MissingLaurentForm: the candidate carries no Laurent coefficient form")]
    MissingLaurentForm,
    #[error("NonIntegral: {0}")]
    NonIntegral(String),
    #[error("LevelViolation: {0}")]
    LevelViolation(String),
    #[error("PreconditionViolated: {0}")]
    PreconditionViolated(String),
    #[error("Cancellation: {0}")]
    Cancellation(String),
}

impl Error {
    /// The bare variant name, e.g. `"NonIntegral"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotDivisible(_) => "NotDivisible",
            Error::ZeroNumerator => "ZeroNumerator",
            Error::DenominatorVanishes(_) => "DenominatorVanishes",
            Error::DivisionByZero(_) => "DivisionByZero",
            Error::SyntaxError { .. } => "SyntaxError",
            Error::InvalidExchange { .. } => "InvalidExchange",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::UnsupportedRegime(_) => "UnsupportedRegime",
            Error::ConstantInput => "ConstantInput",
            Error::InfiniteType { .. } => "InfiniteType",
            Error::NotSymmetric(_) => "NotSymmetric",
            Error::NotInvariant(_) => "NotInvariant",
            Error::NotLaurent(_) => "NotLaurent",
            Error::MissingLaurentForm => "MissingLaurentForm",
            Error::NonIntegral(_) => "NonIntegral",
            Error::LevelViolation(_) => "LevelViolation",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::Cancellation(_) => "Cancellation",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
