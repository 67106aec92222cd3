use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("algebra is not finite dimensional: {0}")]
    NotFiniteDimensional(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("module does not satisfy the relations of its algebra: {0}")]
    RelationViolated(String),
    #[error("prime too small: p = {p} but the endomorphism algebra has dimension {dim}; rerun with a larger prime")]
    PrimeTooSmall { p: u32, dim: usize },
    #[error("operation needs a nonzero module")]
    ZeroModule,
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("module is not injective")]
    NotInjective,
    #[error("module is not indecomposable: {0}")]
    NotIndecomposable(String),
    #[error("no Auslander-Reiten sequence ends at a projective module")]
    ProjectiveEnd,
    #[error("no Auslander-Reiten sequence starts at an injective module")]
    InjectiveStart,
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
