//! Lie ∞-structures on a graded space: the structure itself, décalage,
//! symmetric DGLAs, cohomology, Maurer–Cartan elements and morphisms.

mod cohomology;
mod decalage;
pub mod dgla;
mod mc;
mod morphism;
mod structure;

pub use cohomology::{cochain_from_values, pair, pair_monomials, Cohomology};
pub use decalage::{decalage, inverse_decalage, skew_dgla_defect, SkewBrackets};
pub use dgla::{end_space, endo_dgla, matrix_to_element, CoderDgla, EndDgla, Matrix, SymmetricDgla};
pub use mc::{curvature, is_maurer_cartan, twist};
pub use morphism::{check_linfty_morphism, check_morphism_into_dgla};
pub(crate) use morphism::compositions;
pub use structure::{check_jacobi, check_jacobi_two_path, check_square_zero, jacobi_defect, LieInfty};
