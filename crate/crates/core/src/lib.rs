//! Exact computations with partially ordered groups, their lexicographic
//! products, and pseudo effect algebras built as unit intervals.

pub mod batch;
pub mod decomp;
pub mod error;
pub mod group;
pub mod parse;
pub mod pea;
pub mod represent;
pub mod riesz;
pub mod sample;
pub mod scalar;

pub use error::{AlgebraError, Result};
pub use group::{GroupDescriptor, GroupElement, UnitalPoGroup};
pub use scalar::{Rational, Scalar, ScalarSubgroup};
