//! The crossed product of a finite-dimensional algebra by a twisted partial
//! group action, computed exactly, and a constructive test deciding whether a
//! group-graded algebra arises this way.
//!
//! Everything is computed over ℚ or a prime field `F_p` with exact
//! arithmetic. Linear maps use the row-vector convention: a map `U -> V` is a
//! `dim U x dim V` matrix whose row `i` holds the coordinates of the image of
//! the `i`-th basis vector of `U`.

pub mod action;
pub mod algebra;
pub mod criteria;
pub mod crossed;
pub mod dsl;
pub mod error;
pub mod field;
pub mod graded;
pub mod group;
pub mod matrix;
pub mod multiplier;
pub mod random;
pub mod report;
pub mod search;
pub mod subspace;
pub mod vector;

pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use matrix::Matrix;
pub use subspace::SubspaceBasis;
pub use vector::Vector;
