use thiserror::Error;

/// Errors raised across the library. Every variant names the violated
/// precondition so callers (notably the CLI) can report it verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input must be a positive integer, got 0")]
    ZeroInput,

    #[error("value map is missing divisor {0}")]
    MissingDivisor(String),

    #[error("value map is missing element {0:?}")]
    MissingElement(String),

    #[error("inexact division: remainder {remainder} when dividing by {divisor}")]
    InexactDivision { remainder: String, divisor: String },

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("modulus {0} is not irreducible")]
    ReducibleModulus(String),

    #[error("field size {q} exceeds the cap {cap}")]
    FieldTooLarge { q: u128, cap: u128 },

    #[error("enumeration size {size} exceeds the cap {cap}")]
    EnumerationTooLarge { size: u128, cap: u128 },

    #[error("zero or constant polynomial has no irreducibility status")]
    ConstantPolynomial,

    #[error("fields have different cardinality: {0} vs {1}")]
    CardinalityMismatch(u64, u64),

    #[error("relation is not reflexive: {0:?} is not related to itself")]
    NotReflexive(String),

    #[error("relation is not antisymmetric: {0:?} <= {1:?} and {1:?} <= {0:?} but they differ")]
    NotAntisymmetric(String, String),

    #[error("relation is not transitive: {0:?} <= {1:?} <= {2:?} but {0:?} is not <= {2:?}")]
    NotTransitive(String, String, String),

    #[error("duplicate element label {0:?}")]
    DuplicateElement(String),

    #[error("unknown element label {0:?}")]
    UnknownElement(String),

    #[error("incidence functions live on different posets")]
    MismatchedPosets,

    #[error("function is not unitriangular: value at ({0:?}, {0:?}) is {1}, expected 1")]
    NotUnitriangular(String, String),

    #[error("subset base size {0} exceeds the cap {1}")]
    BaseSizeTooLarge(usize, usize),

    #[error("set family has {0} sets, exceeding the cap {1}")]
    TooManySets(usize, usize),

    #[error("universe of {0} labels exceeds the cap {1}")]
    UniverseTooLarge(usize, usize),

    #[error("set member {0:?} is not in the universe")]
    NotInUniverse(String),

    #[error("weights sum to {0}, expected exactly 1")]
    WeightsNotNormalized(String),

    #[error("weight {0} is negative")]
    NegativeWeight(String),

    #[error("series requires Re z > 1, got Re z = {0}")]
    RealPartNotAboveOne(f64),

    #[error("permutation degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("images {0:?} are not a bijection of 1..={1}")]
    NotABijection(Vec<u32>, usize),

    #[error("degree {0} exceeds the cap {1} for this operation")]
    DegreeTooLarge(usize, usize),

    #[error("degree {0} is below the minimum {1} for this operation")]
    DegreeTooSmall(usize, usize),

    #[error("group of order {order} exceeds the cap {cap} for this operation")]
    GroupTooLarge { order: usize, cap: usize },

    #[error("generators are not contained in the ambient group")]
    GensNotInAmbient,

    #[error("cannot parse cycle notation {input:?}: {reason}")]
    BadCycleNotation { input: String, reason: String },

    #[error("cannot parse {input:?} as {what}")]
    BadParse { input: String, what: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;
