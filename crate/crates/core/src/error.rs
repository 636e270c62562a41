use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the generating sets span different vector spaces")]
    SpanMismatch,
    #[error("the first lattice is not contained in the second")]
    NotSublattice,
    #[error("the polyhedron is empty")]
    EmptyPolyhedron,
    #[error("not a codimension-one face")]
    NotAFace,
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("the support of the cycle is not contained in the domain")]
    SupportNotContained,
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("I together with e is independent")]
    NotDependent,
    #[error("element {0} is a loop")]
    HasLoops(usize),
    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),
    #[error("degree {0} exceeds n - 3 = {1}")]
    DegreeTooLarge(usize, usize),
    #[error("not a tree metric: four-point condition fails at {0:?}")]
    NotATreeMetric([usize; 4]),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
    #[error("function values are inconsistent on cell {0}")]
    InconsistentFunction(usize),
    #[error("weight is not an integer")]
    NonIntegralWeight,
    #[error("cell does not inject under the projection")]
    NotInjective,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
