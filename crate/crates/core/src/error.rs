use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("l must be >= 3 (got l = {l})")]
    UnsupportedConfiguration { l: u32 },

    #[error("dimension mismatch: {left} vs {right} exceptional coefficients")]
    DimensionMismatch { left: usize, right: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cannot determine gin without componentwise linearity (l = {l}, m = {m})")]
    Uncertified { l: u32, m: u64 },

    #[error("coordinate change not generic or ideal not saturated correctly: {0}")]
    NonGeneric(String),

    /// An arithmetic identity that must hold failed; always a bug.
    #[error("internal consistency error: {0}")]
    Internal(String),
}
