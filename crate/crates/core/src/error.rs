use alloc::string::String;

use thiserror::Error;

/// Every failure the algebra core can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different fields or variable sets: {0}")]
    DescriptorMismatch(String),
    #[error("invalid field descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("minimal polynomial is reducible, witness factor {0}")]
    Reducible(String),
    #[error("irreducibility cannot be certified: {0}")]
    UnsupportedIrreducibilityCheck(String),
    #[error("polynomial is not irreducible over the base field")]
    NotIrreducible,
    #[error("operation needs a finite field")]
    InfiniteField,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("polynomial is not univariate in `{0}`")]
    NotUnivariate(String),
    #[error("polynomial is not monic in `{0}`")]
    NotMonic(String),
    #[error("both resultant operands are constant in the elimination variable")]
    BothConstant,
    #[error("interval must satisfy lo < hi")]
    InvalidInterval,
    #[error("an interval endpoint is a root")]
    EndpointRoot,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("matrix or map is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("size bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("invalid Galois data: {0}")]
    GaloisDataInvalid(String),
    #[error("coefficient {0} does not lie in the base field")]
    CoefficientNotInBase(String),
    #[error("ground field not supported by this decision procedure: {0}")]
    UnsupportedGroundField(String),
    #[error("enumeration needs {needed} evaluations, budget is {budget}")]
    ExplosionGuard { needed: u128, budget: u128 },
    #[error("field characteristic is {actual}, expected {expected}")]
    CharMismatch { expected: u64, actual: u64 },
    #[error("p^k = {power} must exceed the fiber degree {degree}")]
    ExponentTooSmall { power: u64, degree: usize },
    #[error("atom or operand is illegal in this context: {0}")]
    ContextMismatch(String),
    #[error("point has {actual} coordinates, expected {expected}")]
    ArityMismatch { expected: usize, actual: usize },
    #[error("zero input")]
    ZeroInput,
    #[error("presentations have different base data: {0}")]
    BaseMismatch(String),
    #[error("characteristic two is not allowed")]
    CharacteristicTwo,
    #[error("beta is a square in the field")]
    BetaIsSquare,
    #[error("chart is not étale at a point of its zero locus: {0}")]
    ChartNotEtale(String),
    #[error("root refinement exceeded its depth cap")]
    RefinementExhausted,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
