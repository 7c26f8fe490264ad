use thiserror::Error;

/// Errors raised by the library for malformed input or violated
/// preconditions. Semantic failures of a cap (an axiom that does not hold)
/// are reported as verdicts with witnesses, not as errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is outside the supported range 2..2^31")]
    ModulusOutOfRange(u64),
    #[error("operands belong to different fields: GF({left}) and GF({right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cross-ratio needs four pairwise distinct parameters")]
    RepeatedParameter,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the zero vector does not define a projective point")]
    ZeroVector,
    #[error("point lies in the projection center")]
    PointInCenter,
    #[error("point does not lie in the projection ambient")]
    PointOutsideAmbient,
    #[error("center and screen are not complementary")]
    NotComplementary,
    #[error("GF({p}) is too small for degree {degree}: {reason}")]
    FieldTooSmall {
        p: u32,
        degree: usize,
        reason: &'static str,
    },
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("verification order violated: {0}")]
    VerificationOrder(&'static str),
    #[error("point set is not a subspace of the associated space")]
    NotASubspace,
    #[error("hyperplanes are not in general position (subset {subset:?})")]
    NotGeneralPosition { subset: Vec<usize> },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("integer overflow while evaluating {0}")]
    Overflow(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
