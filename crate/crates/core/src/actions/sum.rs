use std::sync::Arc;

use crate::graded::{front_mask_odd, GradedSpace};
use crate::sym::{monomials_up_to, multiply, LinearFamily, Monomial, SymElement};

/// `E⊕V` with all of `E` first. Canonical monomials of the sum are `x⊙w`
/// with `x` over `E` and `w` over `V`, so splitting and joining never costs
/// a sign.
#[derive(Clone, Debug, PartialEq)]
pub struct SumSpace {
    e: Arc<GradedSpace>,
    v: Arc<GradedSpace>,
    sum: Arc<GradedSpace>,
}

impl SumSpace {
    pub fn new(e: Arc<GradedSpace>, v: Arc<GradedSpace>) -> Self {
        let sum = Arc::new(e.direct_sum(&v));
        SumSpace { e, v, sum }
    }

    pub fn e(&self) -> &Arc<GradedSpace> {
        &self.e
    }

    pub fn v(&self) -> &Arc<GradedSpace> {
        &self.v
    }

    pub fn sum(&self) -> &Arc<GradedSpace> {
        &self.sum
    }

    pub fn is_v_letter(&self, letter: usize) -> bool {
        letter >= self.e.dim()
    }

    /// `(x, w)` with `m = x⊙w`; `w` in `V`'s own letters.
    pub fn split(&self, m: &Monomial) -> (Monomial, Monomial) {
        let cut = m
            .letters()
            .iter()
            .position(|&l| self.is_v_letter(l as usize))
            .unwrap_or(m.weight());
        let all = (1u32 << m.weight()) - 1;
        let front = (1u32 << cut) - 1;
        let w = m.select(all & !front);
        (m.select(front), unshift(&w, self.e.dim()))
    }

    pub fn join(&self, x: &Monomial, w: &Monomial) -> Monomial {
        x.concat_ordered(&w.shifted(self.e.dim()))
    }

    pub fn v_letters(&self, m: &Monomial) -> usize {
        m.letters()
            .iter()
            .filter(|&&l| self.is_v_letter(l as usize))
            .count()
    }

    pub fn is_pure_e(&self, m: &Monomial) -> bool {
        self.v_letters(m) == 0
    }

    pub fn is_pure_v(&self, m: &Monomial) -> bool {
        self.v_letters(m) == m.weight()
    }

    pub fn embed_e(&self, x: &SymElement) -> SymElement {
        x.clone()
    }

    pub fn embed_v(&self, w: &SymElement) -> SymElement {
        w.iter()
            .map(|(m, c)| (m.shifted(self.e.dim()), c.clone()))
            .collect()
    }

    /// `x ⊗ w ↦ x⊙w` extended bilinearly.
    pub fn tensor(&self, x: &SymElement, w: &SymElement) -> SymElement {
        let mut out = SymElement::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in w.iter() {
                out.add_term(self.join(a, b), ca * cb);
            }
        }
        out
    }

    /// Terms supported on `E` alone, in `E`'s letters.
    pub fn project_e(&self, y: &SymElement) -> SymElement {
        y.iter()
            .filter(|(m, _)| self.is_pure_e(m))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect()
    }

    /// Terms supported on `V` alone, in `V`'s letters.
    pub fn project_v(&self, y: &SymElement) -> SymElement {
        y.iter()
            .filter(|(m, _)| !m.is_empty() && self.is_pure_v(m))
            .map(|(m, c)| (unshift(m, self.e.dim()), c.clone()))
            .collect()
    }

    /// An endomorphism family of `E` as one of `E⊕V`.
    pub fn lift_e(&self, f: &LinearFamily) -> LinearFamily {
        let mut out = LinearFamily::endo(self.sum.clone(), f.degree());
        for (input, value) in f.terms() {
            out.add_unchecked(input.clone(), value);
        }
        out
    }

    /// An endomorphism family of `V` as one of `E⊕V`.
    pub fn lift_v(&self, f: &LinearFamily) -> LinearFamily {
        let mut out = LinearFamily::endo(self.sum.clone(), f.degree());
        let off = self.e.dim();
        for (input, value) in f.terms() {
            out.add_unchecked(input.shifted(off), &self.embed_v(value));
        }
        out
    }

    /// The `E → E` block of a family on the sum.
    pub fn restrict_e(&self, f: &LinearFamily) -> LinearFamily {
        let mut out = LinearFamily::endo(self.e.clone(), f.degree());
        for (input, value) in f.terms() {
            if self.is_pure_e(input) {
                out.add_unchecked(input.clone(), &self.project_e(value));
            }
        }
        out
    }

    /// The `V → V` block of a family on the sum.
    pub fn restrict_v(&self, f: &LinearFamily) -> LinearFamily {
        let mut out = LinearFamily::endo(self.v.clone(), f.degree());
        for (input, value) in f.terms() {
            if self.is_pure_v(input) {
                out.add_unchecked(unshift(input, self.e.dim()), &self.project_v(value));
            }
        }
        out
    }

    /// `P(f) = p_E∘f∘i`: inputs from `V`, outputs in `E`.
    pub fn restrict_ve(&self, f: &LinearFamily) -> LinearFamily {
        let mut out = LinearFamily::new(self.v.clone(), self.e.clone(), f.degree());
        for (input, value) in f.terms() {
            if self.is_pure_v(input) {
                out.add_unchecked(unshift(input, self.e.dim()), &self.project_e(value));
            }
        }
        out
    }

    /// A family `S̄(V) → E` as a family on the sum.
    pub fn lift_ve(&self, t: &LinearFamily) -> LinearFamily {
        let mut out = LinearFamily::endo(self.sum.clone(), t.degree());
        for (input, value) in t.terms() {
            out.add_unchecked(input.shifted(self.e.dim()), value);
        }
        out
    }

    /// `u ↦ p_V f(x⊙u)` on `V`-monomials of weight `≤ max_weight`.
    pub fn slice(&self, f: &LinearFamily, x: &Monomial, max_weight: usize) -> LinearFamily {
        let degree = f.degree() + x.degree(&self.e);
        let mut out = LinearFamily::endo(self.v.clone(), degree);
        if f.is_zero() {
            return out;
        }
        let reach = f.max_arity().saturating_sub(x.weight()).min(max_weight);
        for u in monomials_up_to(&self.v, reach) {
            if let Some(value) = f.get(&self.join(x, &u)) {
                out.add_unchecked(u, &self.project_v(value));
            }
        }
        out
    }

    /// The coderivation of `S̄(V)` generated by the slice of `f` at `x`,
    /// evaluated on `w`: `Σ ε f(x⊙w_S)⊙w_{S^c}`.
    pub fn slice_coderivation(&self, f: &LinearFamily, x: &Monomial, w: &Monomial) -> SymElement {
        let degrees = w.degrees(&self.v);
        let n = w.weight();
        let full: u32 = (1u32 << n) - 1;
        let mut out = SymElement::zero();
        for mask in 1..=full {
            let Some(value) = f.get(&self.join(x, &w.select(mask))) else {
                continue;
            };
            let value = self.project_v(value);
            let rest = w.select(full & !mask);
            let neg = front_mask_odd(&degrees, mask);
            for (letter, c) in value.iter() {
                if rest.is_empty() {
                    out.add_signed(letter.clone(), c, neg);
                } else if let Some((m, neg2)) = multiply(&self.v, letter, &rest) {
                    out.add_signed(m, c, neg ^ neg2);
                }
            }
        }
        out
    }

    /// `Φ_x(w)` extended bilinearly in `x ∈ S̄(E)` and `w ∈ S̄(V)`.
    pub fn slice_apply(&self, f: &LinearFamily, x: &SymElement, w: &SymElement) -> SymElement {
        let mut out = SymElement::zero();
        for (xm, cx) in x.iter() {
            for (wm, cw) in w.iter() {
                out.add_scaled(&self.slice_coderivation(f, xm, wm), &(cx * cw));
            }
        }
        out
    }
}

fn unshift(m: &Monomial, offset: usize) -> Monomial {
    Monomial::from_sorted(m.letters().iter().map(|&l| l - offset as u16))
}
