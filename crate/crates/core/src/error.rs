use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A model or estimator parameter is outside its admissible range.
    #[error("invalid parameter `{name}`: {reason}")]
    Parameter { name: &'static str, reason: String },

    /// A graph failed one of its structural invariants.
    #[error("validation error: {0}")]
    Validation(String),

    /// A numerical routine did not converge.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// The quadratic generator was asked for a graph above its size cap.
    #[error("n = {n} exceeds the exact generator cap of {cap}; use the poisson generator or raise the cap")]
    ExactGeneratorCap { n: u32, cap: u32 },

    /// A routing precondition does not hold (e.g. a node without neighbors).
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::Parameter {
            name,
            reason: reason.into(),
        }
    }
}
