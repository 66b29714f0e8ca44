use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad failure class, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// The caller asked for something malformed or unsupported.
    Input,
    /// A mathematical contract was violated (non-separable fiber, parity, ...).
    Math,
    /// The answer depends on a factorization we could not finish.
    Indeterminate,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("valuation of zero")]
    ValuationOfZero,
    #[error("zero input: {0}")]
    ZeroInput(&'static str),
    #[error("mixed quadratic rings: sqrt({0}) vs sqrt({1})")]
    MixedQuadratic(String, String),
    #[error("{value} is a cusp of cover {cover}")]
    Cusp { cover: String, value: String },
    #[error("specialization of {cover} at {value} is not separable")]
    NotSeparable { cover: String, value: String },
    #[error("polynomial is reducible over Q; factor degrees {0:?}")]
    Reducible(Vec<usize>),
    #[error("unfactored cofactor {0}")]
    UnfactoredCofactor(String),
    #[error("recombination guard exceeded ({0} subsets)")]
    RecombinationLimit(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown cover id {0:?}")]
    UnknownCover(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parity violation: 2 - 2g = {0} is odd")]
    ParityViolation(i64),
    #[error("data unavailable: {0}")]
    DataUnavailable(String),
    #[error("catalog check failed: {0}")]
    Catalog(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::UnfactoredCofactor(_) | Error::RecombinationLimit(_) => {
                ErrorClass::Indeterminate
            }
            Error::NotSeparable { .. }
            | Error::Reducible(_)
            | Error::ParityViolation(_)
            | Error::Catalog(_) => ErrorClass::Math,
            _ => ErrorClass::Input,
        }
    }
}
