//! Coderivations of `S̄(E)` generated by families, their commutator and the
//! Richardson–Nijenhuis bracket.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{front_mask_odd, odd, sign, GradedSpace};
use crate::sym::coalgebra::coproduct_terms;
use crate::sym::element::{SymElement, Tensor};
use crate::sym::family::LinearFamily;
use crate::sym::monomial::{monomials_up_to, multiply, Monomial};

/// The unique coderivation `Q` with `p∘Q = q`:
/// `Q(x) = Σ_S ε q(x_S)⊙x_{S^c}` over nonempty position subsets `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct Coderivation {
    family: LinearFamily,
}

impl Coderivation {
    pub fn from_family(q: LinearFamily) -> Result<Self> {
        if !q.is_endo() {
            return Err(Error::malformed(
                "a coderivation needs a family with source = target",
            ));
        }
        Ok(Coderivation { family: q })
    }

    pub fn zero(space: Arc<GradedSpace>, degree: i32) -> Self {
        Coderivation {
            family: LinearFamily::endo(space, degree),
        }
    }

    pub fn family(&self) -> &LinearFamily {
        &self.family
    }

    pub fn into_family(self) -> LinearFamily {
        self.family
    }

    pub fn degree(&self) -> i32 {
        self.family.degree()
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        self.family.source()
    }

    pub fn eval_monomial(&self, x: &Monomial) -> SymElement {
        extend_as_coderivation(&self.family, x)
    }

    pub fn eval(&self, x: &SymElement) -> SymElement {
        let mut out = SymElement::zero();
        for (m, c) in x.iter() {
            out.add_scaled(&self.eval_monomial(m), c);
        }
        out
    }

    /// `Δ(Q(x)) - (Q⊗id + id⊗Q)Δ(x)`
    pub fn law_defect(&self, x: &Monomial) -> Tensor {
        let space = self.space().clone();
        let lhs = crate::sym::coalgebra::coproduct(&space, &self.eval_monomial(x), 1);
        let mut delta = Tensor::zero();
        for (a, b, neg) in coproduct_terms(&space, x) {
            delta.add_term(vec![a, b], sign(neg));
        }
        let q_odd = odd(self.degree());
        let left = delta.map_factor(0, |m| self.eval_monomial(m), |_| false);
        let right = delta.map_factor(
            1,
            |m| self.eval_monomial(m),
            |before| q_odd && odd(before[0].degree(&space)),
        );
        let mut rhs = left;
        for (w, c) in right.iter() {
            rhs.add_term(w.clone(), c.clone());
        }
        lhs.sub(&rhs)
    }
}

/// Evaluates the coderivation generated by `q` on `x`. `q` need not be an
/// endomorphism family as long as its target letters live in the same space
/// as `x` (used for families on direct sums).
pub(crate) fn extend_as_coderivation(q: &LinearFamily, x: &Monomial) -> SymElement {
    let space = q.source();
    let degrees = x.degrees(space);
    let n = x.weight();
    let full: u32 = (1u32 << n) - 1;
    let mut out = SymElement::zero();
    for mask in 1..=full {
        let sub = x.select(mask);
        let Some(value) = q.get(&sub) else { continue };
        let rest = x.select(full & !mask);
        let neg = front_mask_odd(&degrees, mask);
        for (letter, c) in value.iter() {
            if rest.is_empty() {
                out.add_signed(letter.clone(), c, neg);
            } else if let Some((m, neg2)) = multiply(space, letter, &rest) {
                out.add_signed(m, c, neg ^ neg2);
            }
        }
    }
    out
}

/// `[Q,P]_c(x) = Q(P(x)) - (-1)^{|Q||P|} P(Q(x))`
pub fn commutator_eval(q: &Coderivation, p: &Coderivation, x: &Monomial) -> SymElement {
    let mut out = q.eval(&p.eval_monomial(x));
    let qp = p.eval(&q.eval_monomial(x));
    if odd(q.degree()) && odd(p.degree()) {
        out += &qp;
    } else {
        out -= &qp;
    }
    out
}

/// `[f,g]_RN(x) = f(G(x)) - (-1)^{|f||g|} g(F(x))`, tabulated on every basis
/// monomial of weight `≤ max_weight`. The result is exact on those inputs;
/// nothing beyond `max_weight` is represented.
pub fn rn_bracket(f: &LinearFamily, g: &LinearFamily, max_weight: usize) -> Result<LinearFamily> {
    if !f.is_endo() || !g.is_endo() || f.source() != g.source() {
        return Err(Error::malformed(
            "the RN bracket needs two endomorphism families on one space",
        ));
    }
    let space = f.source().clone();
    let degree = f.degree() + g.degree();
    if f.is_zero() || g.is_zero() {
        return Ok(LinearFamily::endo(space, degree));
    }
    let reach = (f.max_arity() + g.max_arity() - 1).min(max_weight);
    let swap_odd = odd(f.degree()) && odd(g.degree());
    Ok(LinearFamily::tabulate(
        space.clone(),
        space.clone(),
        degree,
        monomials_up_to(&space, reach),
        |x| {
            let mut v = f.eval(&extend_as_coderivation(g, x));
            let w = g.eval(&extend_as_coderivation(f, x));
            if swap_odd {
                v += &w;
            } else {
                v -= &w;
            }
            v
        },
    ))
}
