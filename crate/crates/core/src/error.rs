use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("model mismatch: {0}")]
    ModelMismatch(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("unsupported lattice: {0}")]
    UnsupportedLattice(String),
    #[error("incommensurate shift: {0}")]
    IncommensurateShift(String),
    #[error("degenerate window")]
    DegenerateWindow,
    #[error("invalid exponent: p and q must be >= 1, got {0}")]
    InvalidExponent(f64),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("not a frame: {0}")]
    NotAFrame(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("gaussian does not decay: {0}")]
    NonDecaying(String),
    #[error("insufficient radius: {0}")]
    InsufficientRadius(String),
    #[error("lattice approximation: {0}")]
    LatticeApproximation(String),
    #[error("convergence not certified: {0}")]
    ConvergenceNotCertified(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
