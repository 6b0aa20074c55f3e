use thiserror::Error;

/// Everything the engines can reject or detect.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("closure exceeded the bound of {0} elements")]
    ClosureBound(usize),
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
    #[error("invalid G-set: {0}")]
    InvalidGSet(String),
    #[error("cochain is not a cocycle")]
    NotCocycle,
    #[error("incompatible cochains: {0}")]
    Mismatch(String),
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    /// An internal consistency check failed. Never coerced into a result.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
