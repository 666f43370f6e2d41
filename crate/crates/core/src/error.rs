use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("structure constants not associative on basis triple ({0}, {1}, {2})")]
    AssociativityViolation(usize, usize, usize),
    #[error("subspace is not a two-sided ideal: {0}")]
    NotAnIdeal(String),
    #[error("multiplier compatibility fails on ideal basis pair ({a}, {b})")]
    CompatibilityViolation { a: usize, b: usize },
    #[error("{side} map is not a module map: ambient basis {x}, ideal basis {a}")]
    ModuleMapViolation { side: &'static str, x: usize, a: usize },
    #[error("multipliers live on different ideals")]
    IdealMismatch,
    #[error("ideal is not idempotent")]
    NotIdempotent,
    #[error("group table not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("group table has no identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("group table is malformed: {0}")]
    MalformedTable(String),
    #[error("vector is not in {0}")]
    Membership(String),
    #[error("malformed action data: {0}")]
    Structural(String),
    #[error("action failed verification: {0}")]
    UnverifiedAction(String),
    #[error("components do not form a direct sum: {0}")]
    NotDirectSum(String),
    #[error("grading law fails: B_{g} * B_{h} escapes B_{gh} (basis {i}, {j})")]
    NotGraded {
        g: String,
        h: String,
        gh: String,
        i: usize,
        j: usize,
    },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("invalid input: {0}")]
    Input(String),
}
