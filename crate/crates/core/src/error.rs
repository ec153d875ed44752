use thiserror::Error;

/// Errors surfaced by the polyhedral calculus kernel.
///
/// Domain preconditions (membership, properness, decompositions) map to
/// dedicated variants so callers can distinguish a violated precondition
/// from a genuine internal inconsistency.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("indeterminate sum (+inf) + (-inf)")]
    IndeterminateSum,
    #[error("point is not in the set")]
    NotInSet,
    #[error("point is not in the domain")]
    NotInDomain,
    #[error("sets have empty intersection")]
    EmptyIntersection,
    #[error("sets do not form an extremal system")]
    NotExtremal,
    #[error("set difference has empty interior")]
    NotSolid,
    #[error("effective domains do not intersect")]
    EmptyCommonDomain,
    #[error("composition has empty domain")]
    InfeasibleComposition,
    #[error("improper result: value -infinity detected")]
    ImproperResult,
    #[error("improper function: {0}")]
    ImproperFunction(&'static str),
    #[error("constraint system is not an epigraph: {0}")]
    NotAnEpigraph(&'static str),
    #[error("point is not in the graph")]
    NotInGraph,
    #[error("pair is not a valid sum decomposition")]
    NotADecomposition,
    #[error("invalid intermediate point for the composition")]
    BadIntermediatePoint,
    #[error("point is not in both graphs")]
    NotInBothGraphs,
    #[error("marginal value -infinity detected")]
    MinusInfinityDetected,
    #[error("point is not a solution of the inner problem")]
    NotASolution,
    #[error("function is not nondecreasing for the ordering cone")]
    MonotonicityViolation,
    #[error("vector is not a subgradient at the reference point")]
    NotASubgradient,
    #[error("internal consistency failure: {0}")]
    Internal(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
