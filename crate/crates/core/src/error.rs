use alloc::string::String;

use thiserror::Error;

/// Errors raised by complex construction, geometry and the collapsing procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("face {0} is not in the complex")]
    FaceNotInComplex(String),
    #[error("vertex sets are not disjoint: {0}")]
    VertexClash(String),
    #[error("complex is not a pseudomanifold: {0}")]
    NotPseudomanifold(String),
    #[error("complex is not a manifold: {0}")]
    NotManifold(String),
    #[error("distance has two distinct minima on the star of {0}")]
    NonUniqueMinimum(String),
    #[error("star-minimality violated at {0}")]
    StarMinimalityViolation(String),
    #[error("point lies outside the complex")]
    PointOutsideComplex,
    #[error("degenerate facet {0}")]
    DegenerateFacet(String),
    #[error("retry budget of {0} attempts exceeded")]
    RetryBudgetExceeded(usize),
    #[error("direction is not generic: {0}")]
    NonGenericDirection(String),
    #[error("hyperplane is not generic: {0}")]
    NonGenericHyperplane(String),
    #[error("order relation has a cycle through {0}")]
    CyclicRelation(String),
    #[error("not a subcomplex: {0}")]
    NotSubcomplex(String),
    #[error("oracle answered a vertex outside the star of {0}")]
    OracleInconsistency(String),
    #[error("join {0} is missing from the complex")]
    JoinMissing(String),
    #[error("face {0} is not free")]
    NotFree(String),
    #[error("search budget exhausted after {0} nodes")]
    BudgetExceeded(usize),
    #[error("search space exhausted: no collapse to the target exists")]
    ProvedImpossible,
    #[error("search space exhausted: the complex is evasive")]
    ProvedEvasive,
    #[error("unsupported cell: {0}")]
    UnsupportedCell(String),
    #[error("no star-shaped realization found: {0}")]
    RealizationSearchFailed(String),
    #[error("genericity could not be achieved: {0}")]
    GenericityFailure(String),
    #[error("recursion budget exceeded")]
    RecursionBudgetExceeded,
    #[error("carrier missing for {0}")]
    CarrierMissing(String),
    #[error("complex is not convex")]
    NotConvex,
    #[error("unknown gallery item {0}")]
    UnknownSpec(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("antipodal points have no well-defined comparison")]
    AntipodalAmbiguity,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("certificate failed verification: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = core::result::Result<T, Error>;
