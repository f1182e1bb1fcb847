use thiserror::Error;

/// Every failure the library can report.
///
/// [`Error::code`] gives the stable identifier used in machine-readable
/// output.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("unknown variable pair ({0}, {1})")]
    UnknownVariablePair(usize, usize),
    #[error("transvectant index too large: {0}")]
    IndexTooLarge(String),
    #[error("degenerate map: the resultant of F0 and F1 vanishes")]
    DegenerateMap,
    #[error("not a fixed point")]
    NotAFixedPoint,
    #[error("fixed point cannot be rescaled over the current field")]
    NonRescalable,
    #[error("unexpected form orders: {0}")]
    OrderMismatch(String),
    #[error("point lies on the degenerate locus: {0}")]
    DegenerateLocus(String),
    #[error("the zero tuple is not a weighted projective point")]
    ZeroPoint,
    #[error("conic is singular")]
    SingularConic,
    #[error("point is not on the conic")]
    PointNotOnConic,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("operation undefined on this locus: {0}")]
    OnBadLocus(String),
    #[error("scaling factor is not in the base field: {0}")]
    BetaNotInField(String),
    #[error("locus not covered by the special constructions: {0}")]
    UnhandledLocus(String),
    #[error("point has non-trivial automorphisms (r = 0)")]
    AutomorphismLocus,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch(_) => "FieldMismatch",
            Error::UnknownVariablePair(..) => "UnknownVariablePair",
            Error::IndexTooLarge(_) => "IndexTooLarge",
            Error::DegenerateMap => "DegenerateMap",
            Error::NotAFixedPoint => "NotAFixedPoint",
            Error::NonRescalable => "NonRescalable",
            Error::OrderMismatch(_) => "OrderMismatch",
            Error::DegenerateLocus(_) => "DegenerateLocus",
            Error::ZeroPoint => "ZeroPoint",
            Error::SingularConic => "SingularConic",
            Error::PointNotOnConic => "PointNotOnConic",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::OnBadLocus(_) => "OnBadLocus",
            Error::BetaNotInField(_) => "BetaNotInField",
            Error::UnhandledLocus(_) => "UnhandledLocus",
            Error::AutomorphismLocus => "AutomorphismLocus",
            Error::Parse(_) => "Parse",
            Error::Internal(_) => "Internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
