//! The reduced unshuffle coproduct and the coalgebra laws.

use crate::graded::{front_mask_odd, odd, one, split_masks, GradedSpace};
use crate::sym::element::{SymElement, Tensor};
use crate::sym::monomial::{monomials_up_to, Monomial};

/// `Δ(x) = Σ ε x_S ⊗ x_{S^c}` over proper nonempty position subsets `S`.
/// Positions are distinguishable, so repeated even letters give binomial
/// multiplicities.
pub fn coproduct_terms(space: &GradedSpace, x: &Monomial) -> Vec<(Monomial, Monomial, bool)> {
    let degrees = x.degrees(space);
    split_masks(x.weight())
        .map(|(s, c)| (x.select(s), x.select(c), front_mask_odd(&degrees, s)))
        .collect()
}

/// `Δ^{(n)}`: the coproduct iterated `n` times, landing in `n+1` factors.
pub fn coproduct(space: &GradedSpace, x: &SymElement, iterations: usize) -> Tensor {
    let mut t = Tensor::zero();
    for (m, c) in x.iter() {
        t.add_term(vec![m.clone()], c.clone());
    }
    for k in 0..iterations {
        t = t.split_factor(space, k);
    }
    t
}

/// `(Δ⊗id)Δ(x) - (id⊗Δ)Δ(x)`
pub fn coassociativity_defect(space: &GradedSpace, x: &Monomial) -> Tensor {
    let d = coproduct(space, &SymElement::monomial(x.clone(), one()), 1);
    d.split_factor(space, 0).sub(&d.split_factor(space, 1))
}

/// `Δ(x) - τΔ(x)` with `τ(a⊗b) = (-1)^{|a||b|} b⊗a`.
pub fn cocommutativity_defect(space: &GradedSpace, x: &Monomial) -> Tensor {
    let mut defect = Tensor::zero();
    for (a, b, neg) in coproduct_terms(space, x) {
        let c = crate::graded::sign(neg);
        let swap = odd(a.degree(space)) && odd(b.degree(space));
        defect.add_term(vec![a.clone(), b.clone()], c.clone());
        let c = if swap { c } else { -c };
        defect.add_term(vec![b, a], c);
    }
    defect
}

/// First monomial of weight `≤ max_weight` where `check` returns a nonzero
/// tensor, in canonical order.
pub fn first_tensor_failure(
    space: &GradedSpace,
    max_weight: usize,
    mut check: impl FnMut(&Monomial) -> Tensor,
) -> Option<(Monomial, Tensor)> {
    monomials_up_to(space, max_weight).into_iter().find_map(|m| {
        let t = check(&m);
        (!t.is_zero()).then_some((m, t))
    })
}
