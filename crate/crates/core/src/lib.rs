//! Exact computational algebra for curved Lie algebras and their
//! Chevalley–Eilenberg / Harrison-type functors.
//!
//! Everything is generic over an exact [`Field`]; the aliases at the crate
//! root fix the default scalar, arbitrary-precision rationals.

pub mod error;
pub mod cdga;
pub mod free_lie;
pub mod functors;
pub mod fuzz;
pub mod graded;
pub mod homotopy;
pub mod io;
pub mod lie;

pub use error::{Error, Result};
pub use graded::Field;

/// Default scalar: arbitrary-precision rationals in lowest terms.
pub type Rational = num_rational::BigRational;

/// Machine-word rationals; overflow panics.
pub type Rational64 = num_rational::Rational64;
