//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by construction, evaluation and decision routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A constructor was handed parameters that violate a type invariant.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An evaluation point lies outside the domain of the map.
    #[error("domain violation: {0}")]
    Domain(String),

    /// Jet arithmetic between incompatible expansions (base or order mismatch).
    #[error("jet mismatch: {0}")]
    JetMismatch(String),

    /// Degenerate input where a construction has no meaning (e.g. swap of a
    /// point with itself).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Evaluation on the boundary at a point mass of a singular measure.
    #[error("evaluation at a singular boundary atom: {0}")]
    SingularAtom(String),

    /// An operation was invoked in a mode that its hypotheses exclude.
    #[error("mode error: {0}")]
    Mode(String),

    /// The engine could not settle the question within its bounded work
    /// budget. Never silently converted into a verdict.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    /// A computation produced a non-finite number.
    #[error("non-finite result: {0}")]
    NonFinite(String),

    /// The question falls outside the exactly characterized cases; only the
    /// numerical oracle applies.
    #[error("uncharacterized case: {0}")]
    Uncharacterized(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
