use thiserror::Error;

/// Errors produced by the exact-arithmetic and diagram pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),

    #[error("matrix is singular")]
    Singular,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("form is not negative definite")]
    NotNegativeDefinite,

    #[error(
        "determinant {0} is even; the branched double cover of a knot has odd order first homology"
    )]
    EvenDeterminant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid diagram: {0}")]
    Validation(String),

    #[error("face tracing does not close up to a planar diagram: {0}")]
    NonPlanar(String),

    #[error("diagram is not alternating (edge {0} has the same over/under role at both ends)")]
    NotAlternating(usize),

    #[error("checkerboard coloring does not yield a negative definite Goeritz form")]
    ConventionMismatch,

    #[error("isomorphism enumeration would exceed the budget of {budget} (needs {needed})")]
    GroupTooLarge { budget: u64, needed: u64 },

    #[error("knot has signature {0}, obstruction requires signature 0")]
    SignatureNonzero(i64),

    #[error("record has no alternating diagram and no Goeritz matrix for the requested sign")]
    NotAlternatingAndNoMatrix,

    #[error("argument must be positive, got {0}")]
    NonPositive(i64),

    #[error("Rasmussen invariant must be even, got {0}")]
    OddS(i64),

    #[error("record carries neither tau nor s; no bound can be computed")]
    MissingInvariants,

    #[error("determinant cross-check failed: Goeritz gives {computed}, record says {declared}")]
    DeterminantMismatch { computed: String, declared: String },
}

pub type Result<T> = std::result::Result<T, Error>;
