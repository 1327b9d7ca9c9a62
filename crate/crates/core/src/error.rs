use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("the p-free part of zero is undefined")]
    ZeroPFreePart,
    #[error("polynomial must be monic: {0}")]
    NotMonic(String),
    #[error("polynomial must be nonzero")]
    ZeroPolynomial,
    #[error("polynomial must be nonconstant")]
    ConstantPolynomial,
    #[error("polynomial is not separable: {0}")]
    Inseparable(String),
    #[error("degree of phi ({phi}) exceeds degree of F ({f})")]
    PhiTooLarge { phi: usize, f: usize },
    #[error("phi is not irreducible modulo {p}: {phi}")]
    PhiReducible { phi: String, p: u64 },
    #[error("side {0} is not a principal side")]
    NotPrincipalSide(String),
    #[error("f must be positive")]
    ZeroDegree,
    #[error("x - {u} does not divide F modulo {p}")]
    NotARoot { u: i64, p: u64 },
    #[error("no regular element: {0}")]
    RegularizationFailed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("non-integral coefficient while scaling: {0}")]
    NonIntegral(String),
    #[error("polygon mismatch: {0}")]
    PolygonMismatch(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
