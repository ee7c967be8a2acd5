//! Coalgebra morphisms `S̄(V) → S̄(E)` generated by degree-0 families.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{odd, sign, GradedSpace};
use crate::sym::coalgebra::{coproduct, coproduct_terms};
use crate::sym::element::{SymElement, Tensor};
use crate::sym::family::LinearFamily;
use crate::sym::monomial::Monomial;

/// `F(x) = Σ_k 1/k! f(x_(1))⊙…⊙f(x_(k))`.
///
/// Evaluation sums over set partitions whose blocks are listed by smallest
/// position: `f` has degree 0, so the `k!` orderings of one partition give
/// equal terms and the factorial cancels exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct Comorphism {
    family: LinearFamily,
}

impl Comorphism {
    pub fn from_family(f: LinearFamily) -> Result<Self> {
        if f.degree() != 0 && !f.is_zero() {
            return Err(Error::DegreeMismatch {
                key: "comorphism family".into(),
                expected: 0,
                found: f.degree(),
            });
        }
        Ok(Comorphism { family: f })
    }

    pub fn family(&self) -> &LinearFamily {
        &self.family
    }

    pub fn source(&self) -> &Arc<GradedSpace> {
        self.family.source()
    }

    pub fn target(&self) -> &Arc<GradedSpace> {
        self.family.target()
    }

    pub fn eval_monomial(&self, x: &Monomial) -> SymElement {
        let degrees: Vec<i32> = x.degrees(self.source()).to_vec();
        let full: u32 = (1u32 << x.weight()) - 1;
        let mut memo = HashMap::new();
        self.eval_mask(x, &degrees, full, &mut memo)
    }

    pub fn eval(&self, x: &SymElement) -> SymElement {
        let mut out = SymElement::zero();
        for (m, c) in x.iter() {
            out.add_scaled(&self.eval_monomial(m), c);
        }
        out
    }

    fn eval_mask(
        &self,
        x: &Monomial,
        degrees: &[i32],
        mask: u32,
        memo: &mut HashMap<u32, SymElement>,
    ) -> SymElement {
        if mask == 0 {
            return SymElement::unit();
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let lowest = mask & mask.wrapping_neg();
        let others = mask ^ lowest;
        let mut out = SymElement::zero();
        // every subset of `others`, joined with the lowest position
        let mut sub = others;
        loop {
            let block = lowest | sub;
            if let Some(value) = self.family.get(&x.select(block)) {
                let neg = front_within(degrees, mask, block);
                let tail = self.eval_mask(x, degrees, mask ^ block, memo);
                let term = value.mul(&tail, self.target());
                out.add_scaled(&term, &sign(neg));
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
        memo.insert(mask, out.clone());
        out
    }

    /// `(F⊗F)Δ(x) - Δ(F(x))`
    pub fn law_defect(&self, x: &Monomial) -> Tensor {
        let mut lhs = Tensor::zero();
        for (a, b, neg) in coproduct_terms(self.source(), x) {
            let fa = self.eval_monomial(&a);
            let fb = self.eval_monomial(&b);
            for (ma, ca) in fa.iter() {
                for (mb, cb) in fb.iter() {
                    let c = ca * cb;
                    lhs.add_term(vec![ma.clone(), mb.clone()], if neg { -c } else { c });
                }
            }
        }
        lhs.sub(&coproduct(self.target(), &self.eval_monomial(x), 1))
    }
}

/// Parity of moving the positions of `block` in front of the rest of `mask`.
fn front_within(degrees: &[i32], mask: u32, block: u32) -> bool {
    let mut parity = false;
    let mut odd_skipped = false;
    let mut bits = mask;
    while bits != 0 {
        let p = bits.trailing_zeros();
        bits &= bits - 1;
        if !odd(degrees[p as usize]) {
            continue;
        }
        if block & (1 << p) != 0 {
            parity ^= odd_skipped;
        } else {
            odd_skipped = !odd_skipped;
        }
    }
    parity
}
