//! Representations and Lie ∞-actions, and the semidirect structure on `E⊕V`.

mod action;
mod representation;
mod sum;

pub use action::{adjoint_action, Action};
pub use representation::{adjoint_representation, coadjoint_representation, Representation};
pub use sum::SumSpace;
