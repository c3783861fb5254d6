use thiserror::Error;

/// Errors raised by the fuzzy anti-norm toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("value {0} is outside the unit interval [0, 1]")]
    OutOfUnitInterval(f64),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("condition ({condition}) violated: {detail}")]
    ConditionViolated { condition: &'static str, detail: String },

    #[error("no operand r in (0, 1) satisfies {r1} > r <> {r2}")]
    NoDominatedOperand { r1: f64, r2: f64 },

    #[error("operands live in different spaces or use different conorms")]
    SpaceMismatch,

    #[error("sequence has no candidate limit")]
    MissingLimit,

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("basis is rank deficient (rank {rank} < {len} vectors)")]
    RankDeficient { rank: usize, len: usize },

    #[error("subspace not proper: basis spans all of R^{0}")]
    NotProper(usize),

    #[error("witness invariant violated: {0}")]
    WitnessInvariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(invalid("alpha", format!("{alpha} is not in (0, 1)")))
    }
}
