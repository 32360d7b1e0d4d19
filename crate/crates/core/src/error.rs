use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape mismatch: expected dimension {expected}, got {actual}")]
    Shape { expected: usize, actual: usize },

    /// sigma(t) diverges at the horizon t = t_max.
    #[error("singularity: sigma(t) diverges at t = t_max ({t_max}), got t = {t}")]
    Singularity { t: f64, t_max: f64 },

    #[error("t_end must be < t_max (t_end = {t_end}, t_max = {t_max})")]
    Horizon { t_end: f64, t_max: f64 },

    #[error("integration became non-finite at step {step}")]
    Instability { step: usize },

    #[error("unknown preset '{0}'")]
    UnknownPreset(String),

    /// A value violates a type invariant; `field` names the offending input.
    #[error("invalid {field}: {reason}")]
    Invalid { field: String, reason: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Invalid {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
