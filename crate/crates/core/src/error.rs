use thiserror::Error;

/// Errors raised by the toolkit. Variants mirror the failure modes of each stage.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("not an epsilon-group: {0}")]
    NotEpsilonGroup(String),
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error("lattices live over different groups")]
    GroupMismatch,
    #[error("sublattice not stable under the group action: {0}")]
    NotStable(String),
    #[error("bad polynomial: {0}")]
    BadPolynomial(String),
    #[error("duality cross-check failed on subgroup {subgroup}: H^1 = {h1}, H^-1 = {hm1}")]
    DualityMismatch { subgroup: String, h1: String, hm1: String },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("linear system has no integral solution")]
    NotSolvable,
    #[error("coflasque check failed: {0}")]
    CoflasqueCheckFailed(String),
    #[error("flabby check failed: {0}")]
    FlabbyCheckFailed(String),
    #[error("cohomology class is zero; no extension needed")]
    ZeroClass,
    #[error("H^1 measure did not decrease: {before} -> {after}")]
    NonDecreasingMeasure { before: u64, after: u64 },
    #[error("bad divisor: {0}")]
    BadDivisor(String),
    #[error("exactness failure at k = {k}: {detail}")]
    ExactnessFailure { k: usize, detail: String },
    #[error("isomorphism failure at k = {k}: {detail}")]
    IsoFailure { k: usize, detail: String },
    #[error("generator relation failure: {0}")]
    GeneratorRelationFailure(String),
    #[error("idempotent failure: {0}")]
    IdempotentFailure(String),
    #[error("inconsistent invariants: {0}")]
    InconsistentInvariants(String),
    #[error("nonvanishing H^0 on subgroups: {0:?}")]
    NonvanishingH0(Vec<String>),
    #[error("non-integral result: {0}")]
    NonIntegralResult(String),
    #[error("not a morphism: {0}")]
    NotEquivariant(String),
    #[error("invalid triple: {0}")]
    InvalidTriple(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
