//! The structure-constant file format, shipped fixtures and seeded
//! generators.

pub mod fixtures;
mod format;
pub mod random;

pub use format::{
    ActionSpec, CandidateSpec, Coefficient, FamilySpec, Model, Output, StructureFile, StructureSpec, Term,
};
pub use random::{perturb, random_instance, RandomKind, RandomParams};
