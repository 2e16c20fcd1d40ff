use alloc::string::String;

use crate::structure::ClosureFailure;

/// Errors raised by the algebraic core.
///
/// Variants split into two families: contract violations on the caller's
/// side (bad indices, unmet preconditions, inconsistent instance data) and
/// [`Error::Invariant`], which signals that an exact computation contradicted
/// a structural theorem the code relies on. The latter never happens on a
/// correct build and callers should treat it as fatal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("variable index {index} out of range for {nvars} variables")]
    VariableIndex { index: usize, nvars: usize },

    #[error("ambient mismatch: expected {expected} variables, found {found}")]
    AmbientMismatch { expected: usize, found: usize },

    #[error("value is not a polynomial after clearing the supplied denominator")]
    NotPolynomial,

    #[error("span is not contained in the ambient algebra")]
    NotSubspace,

    #[error("algebra is not closed under the bracket")]
    NotClosed(ClosureFailure),

    #[error("algebra is not nilpotent")]
    NotNilpotent,

    #[error("algebra is not solvable")]
    NotSolvable,

    #[error("expected rank {expected} over the fraction field, found {found}")]
    Rank { expected: usize, found: usize },

    #[error("relation violated: {0}")]
    RelationViolation(String),

    #[error("missing instance datum `{0}`")]
    MissingDatum(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown corpus entry `{0}`")]
    UnknownCorpus(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors that indicate a broken structural guarantee rather
    /// than bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = core::result::Result<T, Error>;
