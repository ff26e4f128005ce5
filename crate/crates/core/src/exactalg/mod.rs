//! Exact scalars and linear algebra over the rationals and prime fields.

mod field;
mod matrix;
pub mod modp;

pub use field::{FieldSpec, Scalar};
pub use matrix::{span_contains, Matrix, Rref};
