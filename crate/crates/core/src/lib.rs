//! The generalized Zelevinsky map for type-A quivers of arbitrary
//! orientation, with exact rank computations and the verification harness
//! behind the `zelevinsky` command-line tool.

pub mod check;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod multiplicity;
pub mod quiver;
pub mod representation;
pub mod zelevinsky;

pub use error::{Error, Result};
