use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// The leading coefficient interval straddles zero, so the degree of the
    /// polynomial cannot be asserted.
    #[error("leading coefficient interval straddles zero; degree is ambiguous")]
    AmbiguousDegree,

    /// Certification could not be completed at the configured precision cap.
    #[error("certification failed at the maximum configured precision ({0} bits)")]
    PrecisionExhausted(u32),

    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// No sign change could be bracketed for the requested zero.
    #[error("no sign change found for zero #{index} within the search window")]
    BracketFailure { index: usize },

    /// A polynomial and the sequence window it was allegedly built from do
    /// not agree.
    #[error("polynomial does not match the supplied sequence window")]
    WindowMismatch,

    /// Two curve families were sampled on different grids.
    #[error("curve families were sampled on different grids")]
    GridMismatch,

    /// The sampled function changes sign where the caller asserted it has
    /// no zeros.
    #[error("sign change detected on the sampled window: {0}")]
    SignChangeDetected(String),

    /// Adjacent root columns could not be assigned to branches consistently,
    /// even after step refinement.
    #[error("root branches could not be assigned consistently near x = {x}")]
    BranchJumpDetected { x: f64 },

    /// A bracket handed to root refinement is not certified to contain a
    /// single simple root.
    #[error("bracket is not certified to contain exactly one simple root")]
    InvalidBracket,

    /// Interval division by a ball whose interval contains zero.
    #[error("division by an interval that straddles zero")]
    DivisorStraddlesZero,
}

pub type Result<T> = std::result::Result<T, Error>;
