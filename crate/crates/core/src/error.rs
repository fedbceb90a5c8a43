use thiserror::Error;

/// Errors raised by the library modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// The call is valid in isolation but not for this physical setup.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The energy bracket does not enclose a sign change of the shooting
    /// function.
    #[error("bracket [{lo}, {hi}] does not enclose an eigenvalue (same sign at both ends)")]
    Bracket { lo: f64, hi: f64 },

    /// A search window produced no root.
    #[error("not found: {0}")]
    NotFound(String),

    /// A supplied quantity is inconsistent with the equations it should
    /// satisfy.
    #[error("consistency error: {0}")]
    Consistency(String),

    /// An iterative procedure stopped before meeting its tolerance.
    #[error("did not converge: {0}")]
    Convergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
