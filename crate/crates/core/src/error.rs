use thiserror::Error;

/// Errors raised by evaluation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the region where the requested method is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// Argument at (or within tolerance of) a pole.
    #[error("pole: {0}")]
    Pole(String),
    /// Invalid method parameter, such as an insufficient expansion order.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// An integrand or series failed to decay.
    #[error("divergent: {0}")]
    Divergent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
