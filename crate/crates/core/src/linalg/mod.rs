//! Exact dense linear algebra and blocked matrices.

pub mod blocked;
pub mod field;
pub mod matrix;

pub use blocked::{BlockAxis, BlockedMatrix};
pub use field::{Field, PrimeField, Rationals, DEFAULT_PRIME};
pub use matrix::{stacked_rank_property, Matrix};
