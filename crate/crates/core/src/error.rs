use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// Variants are grouped by whether the caller handed in bad input
/// ([`Error::is_input_error`]) or the numerics could not deliver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("unsupported dimension {0} (expected {1})")]
    InvalidDimension(usize, &'static str),
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not traceless skew-Hermitian: {0}")]
    NotAlgebraElement(String),
    #[error("matrix is not special unitary: {0}")]
    NotGroupElement(String),
    #[error("matrix is not unitary: residual {0:.3e}")]
    NotUnitary(f64),
    #[error("matrix is not normal: commutator residual {0:.3e}")]
    NotNormal(f64),
    #[error("matrix is singular or too ill-conditioned (condition estimate {0:.3e})")]
    Singular(f64),
    #[error("matrix is not diagonalizable: {0}")]
    NotDiagonalizable(String),
    #[error("eigen solver did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("lambdas are degenerate or vanishing (min separation {0:.3e})")]
    DegenerateLambdas(f64),
    #[error("parts do not commute: commutator {0:.3e}")]
    NonCommutingParts(f64),
    #[error("cannot normalize a zero matrix")]
    ZeroMatrix,
    #[error("factor is not of the form cos(b)1 + sin(b)u: {0}")]
    NotSimpleFactor(String),
    #[error("rotation direction of factor {0} is unrecoverable at beta = pi")]
    AmbiguousDirection(usize),
    #[error("branch index requested for factor {0}, which has no direction")]
    MissingDirection(usize),
    #[error("factorization failed: {0}")]
    FactorizationFailed(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable identifier, used in machine-readable error documents.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InvalidDimension(..) => "InvalidDimension",
            Error::NonFinite { .. } => "NonFinite",
            Error::NotAlgebraElement(_) => "NotAlgebraElement",
            Error::NotGroupElement(_) => "NotGroupElement",
            Error::NotUnitary(_) => "NotUnitary",
            Error::NotNormal(_) => "NotNormal",
            Error::Singular(_) => "Singular",
            Error::NotDiagonalizable(_) => "NotDiagonalizable",
            Error::NoConvergence(_) => "NoConvergence",
            Error::DegenerateLambdas(_) => "DegenerateLambdas",
            Error::NonCommutingParts(_) => "NonCommutingParts",
            Error::ZeroMatrix => "ZeroMatrix",
            Error::NotSimpleFactor(_) => "NotSimpleFactor",
            Error::AmbiguousDirection(_) => "AmbiguousDirection",
            Error::MissingDirection(_) => "MissingDirection",
            Error::FactorizationFailed(_) => "FactorizationFailed",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }

    /// True when the input itself was unacceptable, as opposed to a
    /// numerical breakdown on valid input.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch { .. }
                | Error::InvalidDimension(..)
                | Error::NonFinite { .. }
                | Error::NotAlgebraElement(_)
                | Error::NotGroupElement(_)
                | Error::NotUnitary(_)
                | Error::InvalidArgument(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
