use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested size exceeds an enumeration or construction ceiling.
    #[error("limit exceeded: {0}")]
    Limit(String),

    /// Blahut–Arimoto hit its iteration cap before the duality gap closed.
    #[error("no convergence after {iterations} iterations (gap {gap:.3e} bits)")]
    NonConvergence { iterations: usize, gap: f64 },

    /// An internal invariant failed. Carries a diagnostic dump.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn check_probability(name: &str, p: f64) -> Result<()> {
    if p.is_finite() && (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(domain(format!(
            "{name} = {p} is not a probability in [0, 1]"
        )))
    }
}
