use thiserror::Error;

use crate::exactalg::FieldSpec;
use crate::forms::ValidationFailure;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mixed fields in one computation: {0} and {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("the zero vector is not a linear form")]
    ZeroForm,
    #[error("index {index} out of range for {n} forms")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("size {a} out of range 1..={n}")]
    SizeOutOfRange { a: usize, n: usize },
    #[error("invalid arrangement: {}", join_failures(.0))]
    InvalidArrangement(Vec<ValidationFailure>),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("enumeration needs {required} steps but the budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("F_{p} has fewer than the {needed} distinct elements required")]
    FieldTooSmall { p: u32, needed: usize },
    #[error("bad reduction modulo {0}")]
    BadReduction(u32),
    #[error("verification failed: {0}")]
    Verification(String),
}

fn join_failures(failures: &[ValidationFailure]) -> String {
    failures
        .iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
