use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    DenominatorVanishes,
    #[error("q0 = {0} has no rational square root and the value involves odd powers of t")]
    NonRationalRoot(String),
    #[error("weight must be nonzero")]
    InvalidWeight,
    #[error("central charge must be nonzero for this construction")]
    ZeroCentralCharge,
    #[error("vector leaves the materialized depth range (depth {depth} > {max})")]
    TruncationOverflow { depth: i64, max: usize },
    #[error("c-tilde value is not realized by any weight in the coset: {0}")]
    UnrealizableCTilde(String),
    #[error("quiver relation violated: {0}")]
    RelationViolation(String),
    #[error("no isomorphism found: {0}")]
    NoIsoFound(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Error {
        Error::Json(e.to_string())
    }
}
