//! Exact quaternion arithmetic and quaternionic function analysis.
//!
//! * [`quaternion`]: the Hamilton product in three independent forms,
//!   conjugate, norm and inverse over exact rationals or floats.
//! * [`structure`]: multiplication tables of small real algebras, replayable
//!   derivations showing why no three-dimensional field with `i² = j² = -1`
//!   exists, and zero-divisor search.
//! * [`expr`]: a small expression language for functions of a quaternion
//!   variable and its expansion into a canonical polynomial form.
//! * [`fueter`]: left and right Cauchy-Fueter operators, symbolic and numeric.
//! * [`slice`]: slice-regularity tests and quaternionic power series.

#[cfg(doctest)]
mod book;
pub mod error;
pub mod expr;
pub mod fueter;
pub mod matrix;
pub mod quaternion;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod schemas;
pub mod slice;
pub mod structure;

pub use error::{AlgebraError, ExprError, NumericError, Span, StructureError};
pub use matrix::Matrix4;
pub use quaternion::{unit_table, Quaternion, SignedUnit, Unit};
pub use report::RegularityReport;
pub use scalar::{Mode, Scalar};
