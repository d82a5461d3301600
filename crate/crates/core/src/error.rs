use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("matrix contains a non-finite entry")]
    NonFinite,
    #[error("invalid tolerance (abs = {abs}, rel = {rel}); need abs > 0 and rel >= 0")]
    InvalidTolerance { abs: f64, rel: f64 },
    #[error(
        "not a projection: hermitian residual {hermitian:e}, idempotent residual {idempotent:e}"
    )]
    NotAProjection { hermitian: f64, idempotent: f64 },
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown simple `{0}`")]
    UnknownSimple(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("Q-system mismatch: {0}")]
    QSystemMismatch(String),
    #[error("degenerate spectrum after {attempts} seeded attempts")]
    DegenerateSpectrum { attempts: usize },
    #[error("unit bimodule of `{0}` is not simple; only connected Q-systems are supported")]
    NonSimpleUnit(String),
    #[error("incomplete decomposition: {0}")]
    Incomplete(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}
