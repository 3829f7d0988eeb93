use thiserror::Error;

/// Errors raised by the evaluation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the admissible domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A level or index is outside the supported range.
    #[error("bounds error: {0}")]
    Bounds(String),

    /// Inconsistent truncation or table settings.
    #[error("configuration error: {0}")]
    Config(String),

    /// A numerical routine stopped short of its target tolerance.
    #[error("accuracy error: reached {achieved:e}, wanted {target:e}")]
    Accuracy { achieved: f64, target: f64 },

    /// The point sits on a jump of a Fourier series.
    #[error("ε = {0} is a jump point of the Fourier series")]
    JumpPoint(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
