//! Voronov's higher derived brackets on `𝔥 = Hom(S̄(V), E)`, the subalgebra
//! `𝔏′ = M ⊕ R` of `Coder(S̄(E⊕V))`, and the Lie ∞-structure on
//! `𝔏′[1] ⊕ 𝔥` controlling deformations of O-operators.

mod hdata;
mod lprime;
mod pair;

pub use hdata::{mc_check_h, HElement, VData};
pub use lprime::{lprime_bracket, mc_check_lprime, twisted_mc_check, LPrimeElement};
pub use pair::{
    deformation_check, pair_curvature, q1, q2_lprime, q_mixed, DeformationCheck, PairCurvature,
    PairElement,
};
