use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid quantum numbers: {0}")]
    InvalidState(String),

    #[error("exact arithmetic capacity exceeded: {0}")]
    Capacity(String),

    #[error(
        "quadrature did not converge: estimated relative error {estimate:e} exceeds {target:e}"
    )]
    Accuracy { estimate: f64, target: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("basis is not degenerate: {0}")]
    Degeneracy(String),

    #[error("matrix validation failed: {0}")]
    Validation(String),

    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("resonant coupling channel(s): {}", .channels.join(", "))]
    Resonance { channels: Vec<String> },

    #[error("pulse schedule error: {0}")]
    Schedule(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

impl Error {
    /// True for errors caused by bad inputs rather than by a failed computation.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidState(_)
                | Error::Config(_)
                | Error::Geometry(_)
                | Error::Schedule(_)
                | Error::Dimension(_)
        )
    }
}
