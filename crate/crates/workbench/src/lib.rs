//! Serialization, generators, rendering and the check runner behind the `pfw` command.

pub mod construct;
pub mod generate;
pub mod render;
pub mod schema;
pub mod suite;
