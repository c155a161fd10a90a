use crate::atoms::AtomSet;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported ambient group: {0}")]
    UnsupportedAmbient(String),

    /// The operation's hypotheses are not met by the given data (for example
    /// a construction that needs an infinite positive part was handed a
    /// bounded ground set).
    #[error("inapplicable: {0}")]
    Inapplicable(String),

    /// A search budget ran out.  When atom enumeration is interrupted the
    /// atoms found so far travel along in `partial_atoms`.
    #[error("budget exceeded while {context}")]
    BudgetExceeded {
        context: String,
        partial_atoms: Option<Box<AtomSet>>,
    },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    /// A mathematically guaranteed step failed; indicates a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn budget(context: impl Into<String>) -> Self {
        Error::BudgetExceeded {
            context: context.into(),
            partial_atoms: None,
        }
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
