//! O-operators with respect to actions, Rota–Baxter operators, the induced
//! structure on `V`, and O-operators for the coadjoint representation.

mod coadjoint;
mod operator;

pub use coadjoint::{
    candidate_from_omega, check_inverse, check_symmetric, check_symmetric_inverse,
    coadjoint_cocycle_check, degree_zero_cocycles, inverse_from_omega, invert_comorphism,
    omega_from_inverse, CocycleComparison,
};
pub use operator::{
    check_ooperator, check_phi_t_coderivation, check_rota_baxter, induced_bracket_formula,
    induced_structure, phi_t, InducedStructure,
};
