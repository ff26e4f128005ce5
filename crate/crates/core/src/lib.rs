//! Exact computations for generalized star configurations.
//!
//! A generalized star configuration is the ideal `I_a(Λ)` generated by all
//! `a`-fold products of a list `Λ` of linear forms. Its radical is an
//! intersection of linear primes, so the variety it cuts out is a projective
//! subspace arrangement. This crate computes those arrangements exactly,
//! builds `(Λ, a)` realizing a prescribed arrangement, specializes the
//! construction to point sets in the projective plane, analyses the linear
//! code attached to `Λ`, and writes out generator systems that bound the
//! arithmetic rank of `I_a(Λ)`.
//!
//! All arithmetic is exact: rationals are arbitrary precision and prime
//! fields use residues modulo `p < 2^31`. Finite-field enumeration is only
//! used as an independent cross-check.

pub mod ara;
pub mod budget;
pub mod cli;
pub mod coding;
pub mod error;
pub mod exactalg;
pub mod forms;
pub mod gsc;
pub mod interpolate;
pub mod planar;
pub mod poly;
pub mod sampling;
pub mod subsets;

pub use budget::Budget;
pub use error::{Error, Result};
pub use exactalg::{FieldSpec, Matrix, Scalar};
pub use forms::{Arrangement, FormList, LinearForm, LinearSpan};
pub use gsc::Gsc;
