use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid weight system: {0}")]
    InvalidWeights(String),
    #[error("unknown surface tag `{0}`")]
    UnknownTag(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("polynomial is not weight-homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("invalid custom surface: {0}")]
    InvalidCustomSurface(String),
    #[error("surface failed validation: {0}")]
    InvalidSurface(String),
    #[error("operation not available for {surface}: {reason}")]
    Unsupported { surface: String, reason: String },
    #[error("series input has a negative coefficient {coef} at t^{t} s^{s}")]
    NegativeCoefficient { t: i64, s: u32, coef: String },
    #[error("series input violates a precondition: {0}")]
    SeriesDomain(String),
    #[error("weight {weight} slice has {nnz} nonzeros, above the cap of {cap}")]
    MatrixCapExceeded { weight: i64, nnz: usize, cap: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
