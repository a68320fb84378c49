use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("point set is not M-convex")]
    NotMConvex,
    #[error("translation leaves the nonnegative orthant")]
    OutOfOrthant,
    #[error("{0} is not effectively independent")]
    NotIndependent(String),
    #[error("{0} is not effectively coindependent")]
    NotCoindependent(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("last coordinate is not identically zero")]
    NotRestrictable,
    #[error("size guard exceeded: {size} lattice points > guard {guard}")]
    Guard { size: usize, guard: usize },
    #[error("cannot take the inverse of zero")]
    InverseOfZero,
    #[error("formal sum mixes tracts {0} and {1}")]
    MixedTract(String, String),
    #[error("formal sum exceeds {0} terms")]
    SumTooLarge(usize),
    #[error("no morphism from {0} to {1} in the catalog")]
    NoMorphism(String, String),
    #[error("tract {0} is not idempotent")]
    NotIdempotent(String),
    #[error("tract mismatch: expected {0}, got {1}")]
    TractMismatch(String, String),
    #[error("representation support does not match the set")]
    SupportMismatch,
    #[error("tuple is not in the cross-ratio domain")]
    NotInOmega,
    #[error("operation requires a matroid translate when 1 != -1")]
    SignedProper,
    #[error("hive labeling is missing vertex {0}")]
    MissingLabel(String),
}

impl Error {
    pub fn is_malformed(&self) -> bool {
        matches!(self, Error::Malformed(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn malformed<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Malformed(msg.into()))
}
