use alloc::string::String;

/// Failure modes shared by every computation in the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("time-domain evaluation is not available for spectra with power-law tails")]
    UnsupportedTimeEval,
    #[error("integral diverges: {0}")]
    DivergentIntegral(String),
    #[error("series diverges: {0}")]
    DivergentSum(String),
    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),
    #[error("parameter sits on a singularity: {0}")]
    SingularParameter(String),
    #[error("function is outside the requested space: {0}")]
    NotInSpace(String),
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}

pub(crate) fn require(cond: bool, name: &'static str, reason: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(invalid(name, reason))
    }
}
