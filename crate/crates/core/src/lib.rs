//! Exact computations with periodic complexes over finite-dimensional
//! quiver algebras.

pub mod algebra;
pub mod complex;
pub mod decompose;
pub mod derived;
pub mod error;
pub mod field;
pub mod hochschild;
pub mod homological;
pub mod linalg;
pub mod module;
pub mod par;
pub mod parse;
pub mod report;
pub mod reproduce;
pub mod sampling;
pub mod stable;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
