use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A comparison stayed ambiguous up to the largest interval precision.
    #[error("undecided at {max_precision} bits: {what}")]
    Undecided { what: String, max_precision: u32 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// `ab` is a perfect square, so the Pell machinery does not apply.
    #[error("degenerate Pell equation: {a}·{b} is a perfect square")]
    DegeneratePell { a: String, b: String },

    /// An exact identity or certified inequality did not hold.
    #[error("verification failed: {0}")]
    VerificationFailed(String),

    /// Three or more verified solutions for one equation.
    #[error("conjecture violation for {equation}: {count} verified solutions")]
    ConjectureViolation { equation: String, count: usize },
}

impl Error {
    pub(crate) fn undecided(what: impl Into<String>) -> Self {
        Error::Undecided {
            what: what.into(),
            max_precision: crate::exact_arith::MAX_PRECISION,
        }
    }

    pub(crate) fn failed(what: impl Into<String>) -> Self {
        Error::VerificationFailed(what.into())
    }
}
