//! Knot Floer homology from Kauffman states.

pub mod diagram;
pub mod error;
pub mod frontend;
pub mod invariants;
pub mod multifilt;
pub mod poly;
pub mod reduce;
pub mod states;

pub use error::{Error, Result};
