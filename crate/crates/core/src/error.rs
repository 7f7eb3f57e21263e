use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different domains ({0} vs {1})")]
    SpecMismatch(String, String),
    #[error("invalid domain: {0}")]
    InvalidSpec(String),
    #[error("cannot parse element {literal:?} in {spec}")]
    BadLiteral { literal: String, spec: String },
    #[error("{0} is not divisible by {1}")]
    NotDivisible(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("leading coefficient {0} is not invertible")]
    NotInvertible(String),
    #[error("operation needs a field, got {0}")]
    NotAField(String),
    #[error("operation needs a finite field, got {0}")]
    NotAFiniteField(String),
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("polynomial degree {degree} exceeds {limit}")]
    DegreeTooLarge { degree: i64, limit: i64 },
    #[error("sequence must have at least one term")]
    EmptySequence,
    #[error("numerator degree must be below denominator degree")]
    PositiveValuation,
    #[error("n = {0} lies outside the known partition")]
    OutOfRange(u64),
    #[error("prefix too short to certify the recurrence (n = {n}, linear complexity {lc})")]
    InsufficientTerms { n: usize, lc: usize },
    #[error("sequence is trivial")]
    TrivialSequence,
    #[error("polynomial does not annihilate the sequence")]
    NotAnnihilator,
    #[error("numerator does not match the annihilator")]
    NumeratorMismatch,
    #[error("degree {d} outside [{lo}, {hi}]")]
    DegreeOutOfRange { d: i64, lo: usize, hi: usize },
    #[error("enumeration of {needed} candidates exceeds budget {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("minimal polynomial does not vanish at the point")]
    MuDoesNotVanish,
    #[error("no extension term forces a nonzero discrepancy")]
    NoForcingTerm,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
