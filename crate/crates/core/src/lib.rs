//! Semigroup extensions over ℤ and window-level verification of their
//! algebraic laws and of the neighbourhood bases that make them
//! (semi)topological semigroups.

pub mod carrier;
pub mod extensions;
pub mod monoid;
pub mod structure;
pub mod topology;
pub mod verify;
