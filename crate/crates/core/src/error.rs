use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("unsupported ambient dimension {0}")]
    UnsupportedDimension(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("parameter contexts differ")]
    ParameterMismatch,
    #[error("search budget of {0} nodes exceeded")]
    SearchBudgetExceeded(u64),
    #[error("zero polynomial has no Newton polytope")]
    ZeroPolynomial,
    #[error("polynomials have different supports")]
    SupportMismatch,
    #[error("coefficient at {0} is not a positive rational")]
    NonPositiveCoefficient(String),
    #[error("coefficient at {0} depends on parameters")]
    ParametricCoefficient(String),
    #[error("character entries must be positive rationals")]
    InvalidCharacter,
    #[error("exponent {0} out of range")]
    ExponentOverflow(String),
    #[error("invalid summand: {0}")]
    InvalidSummand(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("disc class shape does not match the decomposition")]
    ShapeMismatch,
    #[error("chamber index {index} outside -1..={max}")]
    InvalidChamber { index: i64, max: i64 },
    #[error("invalid basis simplex: {0}")]
    InvalidBasis(String),
    #[error("transition verification failed: {0}")]
    VerificationFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code used in CLI and FFI error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyInput => "EmptyInput",
            Error::UnsupportedDimension(_) => "UnsupportedDimension",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::ParameterMismatch => "ParameterMismatch",
            Error::SearchBudgetExceeded(_) => "SearchBudgetExceeded",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::SupportMismatch => "SupportMismatch",
            Error::NonPositiveCoefficient(_) => "NonPositiveCoefficient",
            Error::ParametricCoefficient(_) => "ParametricCoefficient",
            Error::InvalidCharacter => "InvalidCharacter",
            Error::ExponentOverflow(_) => "ExponentOverflow",
            Error::InvalidSummand(_) => "InvalidSummand",
            Error::InvalidDecomposition(_) => "InvalidDecomposition",
            Error::ShapeMismatch => "ShapeMismatch",
            Error::InvalidChamber { .. } => "InvalidChamber",
            Error::InvalidBasis(_) => "InvalidBasis",
            Error::VerificationFailed(_) => "VerificationFailed",
            Error::Parse(_) => "ParseError",
        }
    }
}
