//! Crate-wide error type.

use thiserror::Error;

/// Every failure the library can report. The variant name doubles as the
/// stable error name printed by the CLI on its diagnostic stream.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlError {
    #[error("InvalidModulus: modulus must be at least 2 (got {0})")]
    InvalidModulus(u64),

    #[error("NotPrime: {0} is not prime")]
    NotPrime(u64),

    #[error("InvalidPolynomial: {0}")]
    InvalidPolynomial(String),

    #[error("ReduciblePolynomial: modulus polynomial has a monic factor of degree {0}")]
    ReduciblePolynomial(u32),

    #[error("NotAUnit: element {0} has no multiplicative inverse")]
    NotAUnit(u64),

    #[error("RingMismatch: operands belong to different rings")]
    RingMismatch,

    #[error("NotDeterminantOne: matrix determinant is {0}, expected 1")]
    NotDeterminantOne(u64),

    #[error("NotAField: coefficients are Z/{0}Z with {0} composite; use the ring-side operation")]
    NotAField(u64),

    #[error("NotIntegersMod: operation requires Z/NZ coefficients")]
    NotIntegersMod,

    #[error("NotPrimePower: {0} is not a prime power")]
    NotPrimePower(u64),

    #[error("LetterOutOfRange: letter {letter} not in 0..{cardinality}")]
    LetterOutOfRange { letter: u64, cardinality: u64 },

    #[error("MalformedInput: {0}")]
    MalformedInput(String),

    #[error("WordTooShort: need at least two letters")]
    WordTooShort,

    #[error("EmptyWord: word must be nonempty")]
    EmptyWord,

    #[error("NotInAbar: word does not lie in the zero-target class")]
    NotInAbar,

    #[error("BudgetExceeded: operation needs {needed} but the budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },

    #[error("Overflow: value exceeds the supported integer range")]
    Overflow,
}

/// Short stable name of the error variant, used for CLI diagnostics.
impl SlError {
    pub fn name(&self) -> &'static str {
        match self {
            SlError::InvalidModulus(_) => "InvalidModulus",
            SlError::NotPrime(_) => "NotPrime",
            SlError::InvalidPolynomial(_) => "InvalidPolynomial",
            SlError::ReduciblePolynomial(_) => "ReduciblePolynomial",
            SlError::NotAUnit(_) => "NotAUnit",
            SlError::RingMismatch => "RingMismatch",
            SlError::NotDeterminantOne(_) => "NotDeterminantOne",
            SlError::NotAField(_) => "NotAField",
            SlError::NotIntegersMod => "NotIntegersMod",
            SlError::NotPrimePower(_) => "NotPrimePower",
            SlError::LetterOutOfRange { .. } => "LetterOutOfRange",
            SlError::MalformedInput(_) => "MalformedInput",
            SlError::WordTooShort => "WordTooShort",
            SlError::EmptyWord => "EmptyWord",
            SlError::NotInAbar => "NotInAbar",
            SlError::BudgetExceeded { .. } => "BudgetExceeded",
            SlError::Overflow => "Overflow",
        }
    }
}
