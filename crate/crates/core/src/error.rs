use thiserror::Error;

/// Errors raised by the library. Certificate failures indicate an internal bug
/// and are never swallowed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero input")]
    ZeroInput,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("not a group: {0}")]
    InvalidGroup(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("algebra mismatch")]
    AlgebraMismatch,
    #[error("infinite path basis: {0}")]
    InfinitePathBasis(String),
    #[error("not a subgroup: {0:?}")]
    NotSubgroup(Vec<usize>),
    #[error("invalid coset representatives: {0}")]
    InvalidCosetReps(String),
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("module is decomposable; decompose first")]
    DecomposeFirst,
    #[error("inertia not trivial: {0:?}")]
    InertiaNotTrivial(Vec<usize>),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("violation: {0}")]
    Violation(String),
    #[error("internal certificate failure: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
