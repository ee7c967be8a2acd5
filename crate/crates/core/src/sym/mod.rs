//! The reduced symmetric coalgebra `S̄(E)`: canonical monomials, product,
//! coproduct, coderivations, comorphisms and the Richardson–Nijenhuis bracket.

mod coalgebra;
mod coder;
mod comorphism;
mod element;
mod family;
mod monomial;

pub use coalgebra::{
    cocommutativity_defect, coassociativity_defect, coproduct, coproduct_terms,
    first_tensor_failure,
};
pub use coder::{commutator_eval, rn_bracket, Coderivation};
pub(crate) use coder::extend_as_coderivation;
pub use comorphism::Comorphism;
pub use element::{SymElement, Tensor};
pub(crate) use element::display_terms;
pub use family::LinearFamily;
pub use monomial::{monomials_of_weight, monomials_up_to, multiply, normalize, Letter, Monomial};

use crate::error::{Error, Result};
use crate::graded::GradedSpace;

/// Canonicalizes a word of basis names: `ε·(sorted monomial)`, or zero when
/// an odd element repeats.
pub fn normalize_word(space: &GradedSpace, names: &[&str], max_weight: usize) -> Result<SymElement> {
    if names.is_empty() {
        return Err(Error::malformed("empty word"));
    }
    if names.len() > max_weight {
        return Err(Error::Truncation {
            what: "word weight",
            needed: names.len(),
            cap: max_weight,
        });
    }
    let mut word = Vec::with_capacity(names.len());
    for n in names {
        let l = space
            .index_of(n)
            .ok_or_else(|| Error::Unresolved(n.to_string()))?;
        word.push(l as Letter);
    }
    Ok(SymElement::from_word(space, &word))
}
