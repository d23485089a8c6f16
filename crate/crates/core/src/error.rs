use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("ill-formed set: {0}")]
    IllFormedSet(String),
    #[error("domain cannot be enumerated: {0}")]
    NonEnumerableDomain(String),
    #[error("ill-typed value: {0}")]
    IllTypedValue(String),
    #[error("ill-formed ornament at {path}: {reason}")]
    IllFormedOrnament { path: String, reason: String },
    #[error("ill-formed algebra: {0}")]
    IllFormedAlgebra(String),
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
    #[error("ill-formed functional ornament: {0}")]
    IllFormedFunOrn(String),
    #[error("skeleton mismatch: {0}")]
    SkeletonMismatch(String),
}

pub type Result<T, E = KernelError> = std::result::Result<T, E>;

pub(crate) fn ill_typed<T>(msg: impl Into<String>) -> Result<T> {
    Err(KernelError::IllTypedValue(msg.into()))
}

pub(crate) fn bad_orn<T>(path: &str, reason: impl Into<String>) -> Result<T> {
    Err(KernelError::IllFormedOrnament {
        path: if path.is_empty() { "/".into() } else { path.into() },
        reason: reason.into(),
    })
}
