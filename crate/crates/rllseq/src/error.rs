use thiserror::Error;

/// Errors shared by the whole crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller-supplied parameter is outside the accepted range.
    #[error("parameter out of range: {0}")]
    InvalidParameter(String),

    /// An exact counter left the unsigned 64-bit range.
    #[error("counter overflow in {0}")]
    Overflow(&'static str),

    /// An exhaustive routine was asked to exceed its configured cap.
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),

    /// Floating-point rounding landed too close to an integer boundary
    /// for the closed-form count to be trusted.
    #[error("precision failure: {0}")]
    PrecisionLoss(String),

    /// No stored-word layout exists for the requested (n, s, k).
    #[error("stored-word layout infeasible: {0}")]
    LayoutInfeasible(String),

    /// A key does not have the number of bits the layout calls for.
    #[error("key length mismatch: expected {expected} bits, got {got}")]
    KeyLength { expected: usize, got: usize },

    /// An index was requested for a sequence with repeated windows.
    #[error("sequence has duplicate windows")]
    DuplicateWindows,

    /// A bit string or key string could not be parsed.
    #[error("invalid input: {0}")]
    Parse(String),

    /// An internal invariant failed; indicates a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(&'static str),
}
