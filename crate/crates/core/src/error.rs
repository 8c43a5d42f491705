use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("temperature must be finite and positive, got {0}")]
    InvalidTemperature(f64),

    #[error("inverse temperature must be finite and positive, got {0}")]
    InvalidBeta(f64),

    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("eigenvalue computation failed: {0}")]
    Numeric(String),

    #[error("no sign change on bracket [{lo}, {hi}] (g(lo) = {g_lo:.6e}, g(hi) = {g_hi:.6e})")]
    NoSignChange {
        lo: f64,
        hi: f64,
        g_lo: f64,
        g_hi: f64,
    },

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("config line {line}: {reason}")]
    Config { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
