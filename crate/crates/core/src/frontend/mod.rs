//! Family builders, the knot table and report serialization.

pub mod builders;
pub mod json;
pub mod table;

pub use builders::{build_family, FamilyDiagram, FamilySpec};
pub use table::{load_table, parse_table, serialize_table, shipped_table, KnotTableEntry};
