//! Cochains `ω ∈ S̄(E*)` and the differential dual to `M_E`.
//!
//! Convention: `⟨d_*ω, x⟩ = (-1)^{|ω|} ⟨ω, M_E(x)⟩`, with the Koszul pairing
//! `⟨α_1⊙…⊙α_n, x_1⊙…⊙x_n⟩ = Σ_σ ε(σ) (-1)^{Σ_{i<j} |α_j||x_σ(i)|} Π ⟨α_i, x_σ(i)⟩`.
//! The letters of `E*` are the dual basis, index for index.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graded::{odd, one, sign, Bounds, GradedSpace, Permutation, Scalar};
use crate::linfty::LieInfty;
use crate::sym::{monomials_of_weight, Monomial, SymElement};
use crate::verdict::{Verdict, Witness};

/// `⟨α, x⟩` for a monomial `α` over `E*` and `x` over `E`.
pub fn pair_monomials(estar: &GradedSpace, alpha: &Monomial, e: &GradedSpace, x: &Monomial) -> Scalar {
    let n = alpha.weight();
    if n != x.weight() {
        return Scalar::zero();
    }
    let xs = x.letters();
    let degrees: Vec<i32> = x.degrees(e).to_vec();
    let adeg: Vec<i32> = alpha.degrees(estar).to_vec();
    let mut total = Scalar::zero();
    let mut images = Vec::with_capacity(n);
    let mut used = vec![false; n];
    assign(alpha.letters(), xs, &mut images, &mut used, &mut |images| {
        let sigma = Permutation::new(images.to_vec()).expect("bijection");
        let mut neg = sigma.koszul_odd(&degrees);
        for j in 0..n {
            if !odd(adeg[j]) {
                continue;
            }
            for &img in &images[..j] {
                neg ^= odd(degrees[img]);
            }
        }
        total += sign(neg);
    });
    total
}

fn assign(
    alpha: &[u16],
    xs: &[u16],
    images: &mut Vec<usize>,
    used: &mut [bool],
    emit: &mut dyn FnMut(&[usize]),
) {
    let i = images.len();
    if i == alpha.len() {
        emit(images);
        return;
    }
    for p in 0..xs.len() {
        if !used[p] && xs[p] == alpha[i] {
            used[p] = true;
            images.push(p);
            assign(alpha, xs, images, used, emit);
            images.pop();
            used[p] = false;
        }
    }
}

/// `⟨ω, y⟩` extended bilinearly.
pub fn pair(estar: &GradedSpace, omega: &SymElement, e: &GradedSpace, y: &SymElement) -> Scalar {
    let mut total = Scalar::zero();
    for (a, ca) in omega.iter() {
        for (x, cx) in y.iter() {
            if a.letters() == x.letters() {
                total += pair_monomials(estar, a, e, x) * ca * cx;
            }
        }
    }
    total
}

/// The element of `S̄(E*)` whose pairing with each monomial `x` of the given
/// weights is `value(x)`.
pub fn cochain_from_values(
    estar: &GradedSpace,
    e: &GradedSpace,
    weights: impl IntoIterator<Item = usize>,
    mut value: impl FnMut(&Monomial) -> Scalar,
) -> SymElement {
    let mut out = SymElement::zero();
    for w in weights {
        for x in monomials_of_weight(e, w) {
            let v = value(&x);
            if v.is_zero() {
                continue;
            }
            // x and its dual word pair to a nonzero multiple of one another
            let kappa = pair_monomials(estar, &x, e, &x);
            out.add_term(x, v / kappa);
        }
    }
    out
}

/// A cohomology context: the structure, `E*`, and the weight range.
#[derive(Clone, Debug)]
pub struct Cohomology {
    structure: LieInfty,
    dual: Arc<GradedSpace>,
    max_weight: usize,
}

impl Cohomology {
    pub fn new(structure: &LieInfty, max_weight: usize) -> Self {
        Cohomology {
            dual: Arc::new(structure.space().dual()),
            structure: structure.clone(),
            max_weight,
        }
    }

    pub fn dual_space(&self) -> &Arc<GradedSpace> {
        &self.dual
    }

    fn degree_of(&self, omega: &SymElement) -> Result<i32> {
        if omega.is_zero() {
            return Ok(0);
        }
        omega
            .homogeneous_degree(&self.dual)
            .ok_or_else(|| Error::malformed("cochain is not homogeneous"))
    }

    /// `d_*ω` by pairing with `M_E`, on all weights `≤ max_weight`.
    pub fn differential(&self, omega: &SymElement) -> Result<SymElement> {
        let deg = self.degree_of(omega)?;
        let e = self.structure.space();
        let s = sign(odd(deg));
        Ok(cochain_from_values(&self.dual, e, 1..=self.max_weight, |x| {
            let mx = self.structure.coder().eval_monomial(x);
            pair(&self.dual, omega, e, &mx) * &s
        }))
    }

    /// `d_*` on a generator `α`, from the structure constants alone.
    fn on_generator(&self, a: usize) -> SymElement {
        let e = self.structure.space();
        let alpha = SymElement::letter(a);
        let s = sign(odd(self.dual.degree(a)));
        let arity = self.structure.brackets().max_arity();
        cochain_from_values(&self.dual, e, 1..=arity.min(self.max_weight), |x| {
            let lx = self.structure.brackets().eval_monomial(x);
            pair(&self.dual, &alpha, e, &lx) * &s
        })
    }

    /// `d_*` as the degree +1 derivation of `S(E*)` extending its values on
    /// generators: `D(α⊙β) = Dα⊙β + (-1)^{|α|} α⊙Dβ`.
    pub fn differential_as_derivation(&self, omega: &SymElement) -> SymElement {
        let gens: Vec<SymElement> = (0..self.dual.dim()).map(|a| self.on_generator(a)).collect();
        let mut out = SymElement::zero();
        for (m, c) in omega.iter() {
            let letters = m.letters();
            for i in 0..letters.len() {
                let before: i32 = letters[..i]
                    .iter()
                    .map(|&l| self.dual.degree(l as usize))
                    .sum();
                let left = Monomial::from_letters(
                    &self.dual,
                    &letters[..i].iter().map(|&l| l as usize).collect::<Vec<_>>(),
                );
                let right = Monomial::from_letters(
                    &self.dual,
                    &letters[i + 1..].iter().map(|&l| l as usize).collect::<Vec<_>>(),
                );
                let (Some(left), Some(right)) = (left, right) else { continue };
                let mut term = gens[letters[i] as usize].clone();
                if !left.is_empty() {
                    term = SymElement::monomial(left, one()).mul(&term, &self.dual);
                }
                if !right.is_empty() {
                    term = term.mul(&SymElement::monomial(right, one()), &self.dual);
                }
                out.add_scaled(&term, &(sign(odd(before)) * c));
            }
        }
        out.truncated(self.max_weight)
    }

    /// `ω∘M_E = 0` on every monomial of weight `≤ max_weight`.
    pub fn is_cocycle(&self, omega: &SymElement, bounds: Bounds) -> Result<Verdict> {
        let d = self.differential(omega)?;
        let witness = d.iter().next().map(|(m, c)| Witness {
            monomial: m.display(&self.dual),
            weight: m.weight(),
            lhs: format!("d_*ω has coefficient {} here", crate::graded::format_scalar(c)),
            rhs: "0".into(),
        });
        Ok(Verdict::from_witness("cocycle", bounds, witness))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::int;
    use crate::sym::{monomials_up_to, LinearFamily};

    fn fixture_a() -> LieInfty {
        let e = Arc::new(GradedSpace::new([("e", -1), ("f", -1)]).unwrap());
        let mut l = LinearFamily::endo(e.clone(), 1);
        l.add_term(Monomial::from_letters(&e, &[0, 1]).unwrap(), 0, int(-1))
            .unwrap();
        LieInfty::new(l).unwrap()
    }

    #[test]
    fn pairing_matches_the_two_letter_rule() {
        let e = GradedSpace::new([("x", 1), ("y", 2), ("z", -1)]).unwrap();
        let es = e.dual();
        for xm in monomials_up_to(&e, 2).into_iter().filter(|m| m.weight() == 2) {
            let (a, b) = (xm.letters()[0] as usize, xm.letters()[1] as usize);
            let (dx, dy) = (e.degree(a), e.degree(b));
            let f = a;
            let g = b;
            // (f⊙g)(x⊙y) = (-1)^{|x||g|} f(x)g(y) + f(y)g(x)
            let mut expected = sign(odd(dx) && odd(es.degree(g)));
            if a == b {
                expected += int(1);
            }
            let _ = dy;
            let alpha = Monomial::from_letters(&es, &[f, g]).unwrap();
            assert_eq!(pair_monomials(&es, &alpha, &e, &xm), expected, "{xm:?}");
        }
    }

    #[test]
    fn differential_two_ways_on_fixture_a() {
        let l = fixture_a();
        let c = Cohomology::new(&l, 4);
        let es = c.dual_space().clone();
        for w in 1..=3 {
            for a in monomials_of_weight(&es, w) {
                let omega = SymElement::monomial(a, int(1));
                let d1 = c.differential(&omega).unwrap();
                let d2 = c.differential_as_derivation(&omega);
                assert_eq!(d1, d2, "{}", omega.display(&es));
                assert!(c.differential(&d1).unwrap().is_zero());
            }
        }
        // ⟨e*⊙f*, e⊙f⟩ = -1
        let de = c.differential(&SymElement::letter(0)).unwrap();
        assert_eq!(de.display(&es), "-e*⊙f*");
    }
}
