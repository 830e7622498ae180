//! Finite distributive lattices in Birkhoff form, with sublattices and homomorphisms.

pub mod frame;
pub mod hom;
pub mod poset;
pub mod predicates;
pub mod sublattice;

pub use frame::{Elem, FiniteFrame};
pub use hom::{is_isomorphic, FrameHom, HomReport};
pub use poset::Poset;
pub use predicates::{frame_predicates, FramePredicates};
pub use sublattice::{complemented_elements, Sublattice};
