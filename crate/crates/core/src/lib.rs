//! Exact structure-constant kernel for symmetric Lie ∞-algebras.
//!
//! Everything is finite dimensional and rational. Identities are checked on
//! every basis monomial up to an explicit weight bound, which multilinearity
//! makes complete on that range.

pub mod error;
pub mod graded;
pub mod actions;
pub mod cli;
pub mod io;
pub mod linfty;
pub mod ooperators;
pub mod sym;
pub mod voronov;
pub mod verdict;

#[cfg(test)]
pub(crate) mod testing;

pub use error::{Error, Result};
pub use graded::{Bounds, GradedSpace, Scalar};
pub use sym::{Coderivation, Comorphism, LinearFamily, Monomial, SymElement};
pub use verdict::{Verdict, Witness};
