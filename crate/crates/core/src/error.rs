use thiserror::Error;

/// Errors raised by constructors and operations across the crate.
///
/// Failed *conditions* (a semigroup that is not reduced, an identity that does
/// not hold) are reported as verdicts with witnesses, not through this type.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("semigroup must have at least one element")]
    Empty,
    #[error("table is not square: expected {expected} entries, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("table entry at ({0}, {1}) is out of range")]
    OutOfRangeEntry(usize, usize),
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("exhaustive associativity check on {0} elements requires the large-input flag")]
    TooLargeForExhaustiveCheck(usize),
    #[error("expected {expected} labels, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("element {0} of E is not idempotent")]
    NotIdempotentInE(usize),
    #[error("element {0} is not in E")]
    NotInE(usize),
    #[error("E must be nonempty")]
    EmptyE,
    #[error("element {0} is not regular")]
    NotRegular(usize),
    #[error("not a reduced E-Fountain semigroup: {0}")]
    NotReducedEFountain(String),
    #[error("congruence condition fails at ({0}, {1})")]
    CongruenceConditionFails(usize, usize),
    #[error("map does not go between the requested classes")]
    DomainMismatch,
    #[error("enumeration needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("isomorphism search exceeds supported size ({objects} objects, {morphisms} morphisms)")]
    SearchBudgetExceeded { objects: usize, morphisms: usize },
    #[error("algebra elements live over different bases")]
    BasisMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("algebra has no unit")]
    NoUnit,
    #[error("semigroup is not inverse")]
    NotInverse,
    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("unknown criterion {0:?}")]
    UnknownCriterion(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
