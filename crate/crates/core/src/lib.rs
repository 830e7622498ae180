//! Finite pointfree topology: frames as finite distributive lattices, their congruence
//! frames, Frith frames, Pervin spaces, Weil-entourage quasi-uniformities, spectra and
//! completions, together with brute-force categorical oracles for testing.

pub mod caps;
pub mod catalog;
pub mod closure;
pub mod completion;
pub mod congruence;
pub mod entourage;
pub mod error;
pub mod frith;
pub mod lattice;
pub mod oracle;
pub mod pervin;
pub mod spectrum;

pub use caps::Caps;
pub use error::{Error, Result};
pub use lattice::{Elem, FiniteFrame, FrameHom, Poset, Sublattice};
