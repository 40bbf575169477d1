use thiserror::Error;

/// Every failure the library can report. Variants marked as bug signals
/// guard invariants that hold mathematically and should never fire.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("NonInvertibleDiagonal: diagonal entry at '{0}' is not a unit")]
    NonInvertibleDiagonal(String),
    #[error("NotAGroup: {0}")]
    NotAGroup(String),
    #[error("OrderBoundExceeded: group order {order} exceeds bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },
    #[error("InvalidGroup: {0}")]
    InvalidGroup(String),
    #[error("InvalidRing: {0}")]
    InvalidRing(String),
    #[error("IntegralityViolation: {0}")]
    IntegralityViolation(String),
    #[error("NotInImage: {0}")]
    NotInImage(String),
    #[error("NonIntegralConstant: {0}")]
    NonIntegralConstant(String),
    #[error("NotBinomial: {0}")]
    NotBinomial(String),
    #[error("NotInvertibleIndex: index of class '{0}' is not a unit")]
    NotInvertibleIndex(String),
    #[error("NumericalityViolation: {0}")]
    NumericalityViolation(String),
    #[error("NonExactDivision: {0}")]
    NonExactDivision(String),
    #[error("TruncationTooSmall: {0}")]
    TruncationTooSmall(String),
    #[error("InvalidTruncation: {0}")]
    InvalidTruncation(String),
    #[error("Parse: {0}")]
    Parse(String),
    #[error("RingMismatch: {0}")]
    RingMismatch(String),
    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),
}

impl Error {
    /// The variant name, used by front ends to report the error case.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonInvertibleDiagonal(_) => "NonInvertibleDiagonal",
            Error::NotAGroup(_) => "NotAGroup",
            Error::OrderBoundExceeded { .. } => "OrderBoundExceeded",
            Error::InvalidGroup(_) => "InvalidGroup",
            Error::InvalidRing(_) => "InvalidRing",
            Error::IntegralityViolation(_) => "IntegralityViolation",
            Error::NotInImage(_) => "NotInImage",
            Error::NonIntegralConstant(_) => "NonIntegralConstant",
            Error::NotBinomial(_) => "NotBinomial",
            Error::NotInvertibleIndex(_) => "NotInvertibleIndex",
            Error::NumericalityViolation(_) => "NumericalityViolation",
            Error::NonExactDivision(_) => "NonExactDivision",
            Error::TruncationTooSmall(_) => "TruncationTooSmall",
            Error::InvalidTruncation(_) => "InvalidTruncation",
            Error::Parse(_) => "Parse",
            Error::RingMismatch(_) => "RingMismatch",
            Error::ShapeMismatch(_) => "ShapeMismatch",
        }
    }

    /// Whether the error comes from malformed input rather than mathematics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidGroup(_)
                | Error::InvalidRing(_)
                | Error::InvalidTruncation(_)
                | Error::Parse(_)
                | Error::RingMismatch(_)
                | Error::ShapeMismatch(_)
                | Error::NotAGroup(_)
                | Error::OrderBoundExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
