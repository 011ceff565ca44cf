use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("hyperplanes {0} and {1} are proportional")]
    DuplicateHyperplane(usize, usize),
    #[error("form {0} is zero")]
    ZeroForm(usize),
    #[error("form {index} has length {found}, expected {expected}")]
    DimensionMismatch { index: usize, found: usize, expected: usize },
    #[error("ambient dimension {0} is not supported here; take a generic section first")]
    UnsupportedRank(usize),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid multiplicities: {0}")]
    Multiplicity(String),
    #[error("vector is zero")]
    ZeroVector,
    #[error("vector coordinates do not sum to zero")]
    NonProjective,
    #[error("multinet violation: {0}")]
    Multinet(#[from] MultinetViolation),
    #[error("search budget of {0} nodes exceeded")]
    SearchBudgetExceeded(u64),
    #[error("matrix budget exceeded: {needed} columns needed, {allowed} allowed")]
    BudgetExceeded { needed: usize, allowed: usize },
    #[error("characteristic {p} divides the cover order {n}")]
    BadPrime { p: u64, n: u64 },
    #[error("multiplicity vector is not primitive (gcd {0})")]
    NonPrimitiveMultiplicity(u64),
    #[error("character does not match the presentation: {0}")]
    FieldMismatch(String),
    #[error("relators are not commutators")]
    NotCommutatorRelators,
    #[error("no root-of-unity context of order {0} available")]
    ContextTooSmall(u64),
    #[error("presentation could not be simplified: {0}")]
    SimplificationFailure(String),
    #[error("{0}")]
    Precondition(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultinetViolation {
    #[error("class weights differ: {0:?}")]
    UnequalWeights(Vec<u64>),
    #[error("lines {0} and {1} from different classes meet outside the base locus")]
    UncoveredCrossing(usize, usize),
    #[error("flat {0} has unequal class weights")]
    InconsistentNX(usize),
    #[error("class {0} is disconnected")]
    DisconnectedClass(usize),
    #[error("identity fails: {0}")]
    IdentityFailure(String),
    #[error("malformed candidate: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
