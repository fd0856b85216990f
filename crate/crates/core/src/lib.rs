//! Exact inflection and vertex invariants of plane curve germs at the origin.

pub mod arith;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod intersection;
pub mod invariants;

pub use arith::*;
pub use error::{CurveError, Result};
