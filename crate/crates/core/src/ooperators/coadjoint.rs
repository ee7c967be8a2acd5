use std::sync::Arc;

use num_traits::Zero;

use crate::actions::coadjoint_representation;
use crate::error::{Error, Result};
use crate::graded::linalg::{inverse, kernel};
use crate::graded::{odd, one, sign, Bounds, GradedSpace, Scalar};
use crate::linfty::{cochain_from_values, Cohomology, LieInfty};
use crate::ooperators::check_ooperator;
use crate::sym::{monomials_of_weight, monomials_up_to, normalize, Comorphism, LinearFamily, Monomial, SymElement};
use crate::verdict::{Verdict, Witness};

/// The family of `F⁻¹` for an invertible comorphism `F`, solved weight by
/// weight: `g₁ = f₁⁻¹` and `g_n(x) = -g₁(p F(G_{<n}(x)))` for `n ≥ 2`.
pub fn invert_comorphism(f: &LinearFamily, max_weight: usize) -> Result<LinearFamily> {
    let (src, tgt) = (f.source().clone(), f.target().clone());
    if src.dim() != tgt.dim() {
        return Err(Error::NotInvertible("source and target dimensions differ".into()));
    }
    let n = src.dim();
    let mut m = vec![vec![Scalar::zero(); n]; n];
    for (input, value) in f.component(1).terms() {
        let col = input.letters()[0] as usize;
        for (o, c) in value.iter() {
            m[o.letters()[0] as usize][col] = c.clone();
        }
    }
    let inv = inverse(&m).ok_or_else(|| Error::NotInvertible("the linear part is singular".into()))?;
    let mut g = LinearFamily::new(tgt.clone(), src.clone(), 0);
    for (col, _) in inv.iter().enumerate() {
        let value: SymElement = (0..n)
            .filter(|&row| !inv[row][col].is_zero())
            .map(|row| (Monomial::letter(row), inv[row][col].clone()))
            .collect();
        g.add(Monomial::letter(col), &value)?;
    }
    let g1 = g.clone();
    for w in 2..=max_weight {
        let gc = Comorphism::from_family(g.clone())?;
        let mut layer = Vec::new();
        for x in monomials_of_weight(&tgt, w) {
            let back = f.eval(&gc.eval_monomial(&x));
            layer.push((x, g1.eval(&back).scaled(&-one())));
        }
        for (x, value) in layer {
            g.add(x, &value)?;
        }
    }
    Ok(g)
}

/// `F∘G = id` and `G∘F = id` on monomials of weight `≤ max_weight`.
pub fn check_inverse(f: &LinearFamily, g: &LinearFamily, bounds: Bounds) -> Result<Verdict> {
    let fc = Comorphism::from_family(f.clone())?;
    let gc = Comorphism::from_family(g.clone())?;
    for (space, outer, inner) in [(g.source(), &fc, &gc), (f.source(), &gc, &fc)] {
        for x in monomials_up_to(space, bounds.max_weight) {
            let back = outer.eval(&inner.eval_monomial(&x));
            let id = SymElement::monomial(x.clone(), one());
            if back != id {
                return Ok(Verdict::fail(
                    "inverse",
                    bounds,
                    Witness {
                        monomial: x.display(space),
                        weight: x.weight(),
                        lhs: back.display(space),
                        rhs: id.display(space),
                    },
                ));
            }
        }
    }
    Ok(Verdict::pass("inverse", bounds))
}

fn extend(space: &GradedSpace, a: &Monomial, letter: usize) -> Option<(Monomial, bool)> {
    let mut word = a.letters().to_vec();
    word.push(letter as u16);
    normalize(space, &word)
}

fn value_on(f: &LinearFamily, key: Option<(Monomial, bool)>, letter: usize) -> Scalar {
    match key {
        Some((m, neg)) => f.eval_monomial(&m).coefficient(&Monomial::letter(letter)) * sign(neg),
        None => Scalar::zero(),
    }
}

/// `⟨β, t_n(α_1,…,α_n)⟩ = (-1)^{|α||β| + |α_n|(|α_1|+…+|α_{n-1}|)} ⟨α_n, t_n(α_1,…,α_{n-1},β)⟩`
/// for `t: S̄(E*) → E`, all `n ≤ max_weight`.
pub fn check_symmetric(t: &LinearFamily, max_weight: usize) -> Result<()> {
    let s = t.source();
    for_each_prefix(s, max_weight, |a, p, q| {
        let ad = a.degree(s);
        let (dp, dq) = (s.degree(p), s.degree(q));
        let lhs = value_on(t, extend(s, a, p), q);
        let rhs = value_on(t, extend(s, a, q), p) * sign(odd((ad + dp) * dq) ^ odd(dp * ad));
        (lhs == rhs).then_some(()).ok_or_else(|| Error::SymmetryViolation {
            witness: format!("t on {} against {}", word_display(s, a, p), s.name(q)),
        })
    })
}

/// `⟨t⁻¹_n(x_1,…,x_n), y⟩ = (-1)^{|y||x_n|} ⟨t⁻¹_n(x_1,…,x_{n-1},y), x_n⟩`
/// for `g: S̄(E) → E*`.
pub fn check_symmetric_inverse(g: &LinearFamily, max_weight: usize) -> Result<()> {
    let s = g.source();
    for_each_prefix(s, max_weight, |a, p, q| {
        let lhs = value_on(g, extend(s, a, p), q);
        let rhs = value_on(g, extend(s, a, q), p) * sign(odd(s.degree(p) * s.degree(q)));
        (lhs == rhs).then_some(()).ok_or_else(|| Error::SymmetryViolation {
            witness: format!("t⁻¹ on {} against {}", word_display(s, a, p), s.name(q)),
        })
    })
}

fn word_display(s: &GradedSpace, a: &Monomial, p: usize) -> String {
    let mut names: Vec<&str> = a.letters().iter().map(|&l| s.name(l as usize)).collect();
    names.push(s.name(p));
    names.join("⊙")
}

fn for_each_prefix(
    s: &Arc<GradedSpace>,
    max_weight: usize,
    mut f: impl FnMut(&Monomial, usize, usize) -> Result<()>,
) -> Result<()> {
    let mut prefixes = vec![Monomial::from_sorted([])];
    prefixes.extend(monomials_up_to(s, max_weight.saturating_sub(1)));
    for a in &prefixes {
        for p in 0..s.dim() {
            for q in 0..s.dim() {
                f(a, p, q)?;
            }
        }
    }
    Ok(())
}

/// `ω` with `⟨ω, x_1⊙…⊙x_{k+1}⟩ = ⟨t⁻¹_k(x_1,…,x_k), x_{k+1}⟩`, on weights
/// `2..=max_weight`. `g: S̄(E) → E*` must be symmetric for this to be well
/// defined; the last letter of each canonical word is the one paired.
pub fn omega_from_inverse(g: &LinearFamily, max_weight: usize) -> SymElement {
    let e = g.source();
    let estar = g.target();
    cochain_from_values(estar, e, 2..=max_weight, |x| {
        let letters = x.letters();
        let (head, last) = letters.split_at(letters.len() - 1);
        let head = Monomial::from_sorted(head.iter().copied());
        g.eval_monomial(&head).coefficient(&Monomial::letter(last[0] as usize))
    })
}

/// `t⁻¹_k(x) = Σ_j ⟨ω, x⊙e_j⟩ e_j*`, for `k < max_weight`.
pub fn inverse_from_omega(e: &Arc<GradedSpace>, omega: &SymElement, max_weight: usize) -> LinearFamily {
    let estar = Arc::new(e.dual());
    let inputs = monomials_up_to(e, max_weight.saturating_sub(1));
    LinearFamily::tabulate(e.clone(), estar.clone(), 0, inputs, |x| {
        (0..e.dim())
            .filter_map(|j| {
                let (m, neg) = extend(e, x, j)?;
                let v = crate::linfty::pair(&estar, omega, e, &SymElement::monomial(m, sign(neg)));
                (!v.is_zero()).then(|| (Monomial::letter(j), v))
            })
            .collect()
    })
}

/// A basis of the degree-0 cocycles in `⊕_{2≤n≤max_weight} S^n(E*)`, with
/// `d_*` checked on monomials of weight `≤ max_weight + 1`.
pub fn degree_zero_cocycles(l: &LieInfty, max_weight: usize) -> Result<Vec<SymElement>> {
    let cohom = Cohomology::new(l, max_weight + 1);
    let estar = cohom.dual_space().clone();
    let unknowns: Vec<Monomial> = (2..=max_weight)
        .flat_map(|w| monomials_of_weight(&estar, w))
        .filter(|m| m.degree(&estar) == 0)
        .collect();
    let basis: Vec<SymElement> = unknowns
        .iter()
        .map(|m| SymElement::monomial(m.clone(), one()))
        .collect();
    let mut columns = Vec::with_capacity(basis.len());
    for b in &basis {
        columns.push(cohom.differential(b)?);
    }
    let mut rows: Vec<Monomial> = columns.iter().flat_map(|c| c.iter().map(|(m, _)| m.clone())).collect();
    rows.sort();
    rows.dedup();
    let matrix: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| columns.iter().map(|c| c.coefficient(r)).collect())
        .collect();
    Ok(kernel(&matrix, basis.len())
        .into_iter()
        .map(|x| {
            let mut out = SymElement::zero();
            for (b, c) in basis.iter().zip(x) {
                out.add_scaled(b, &c);
            }
            out
        })
        .collect())
}

/// The result of comparing the coadjoint O-operator condition with the
/// cocycle condition on `ω`.
#[derive(Clone, Debug)]
pub struct CocycleComparison {
    /// `t⁻¹`, tabulated to the checked weight.
    pub inverse: LinearFamily,
    pub omega: SymElement,
    /// Parts: `inverse`, `cocycle` and `ooperator`. The verdict is the
    /// cocycle's; `agree` records whether the O-operator check matched.
    pub verdict: Verdict,
    pub agree: bool,
}

/// For an invertible symmetric `t: S̄(E*) → E`: inverts, certifies
/// `T∘T⁻¹ = id`, assembles `ω` and compares `d_*ω = 0` (through weight
/// `max_weight + 1`) with the O-operator condition for the coadjoint
/// representation (through `max_weight`).
pub fn coadjoint_cocycle_check(t: &LinearFamily, l: &LieInfty, bounds: Bounds) -> Result<CocycleComparison> {
    bounds.validate()?;
    let w = bounds.max_weight;
    let co = coadjoint_representation(l);
    if t.source().as_ref() != co.space().as_ref() || t.target().as_ref() != l.space().as_ref() {
        return Err(Error::malformed("a coadjoint candidate maps S̄(E*) to E"));
    }
    check_symmetric(t, w)?;
    let g = invert_comorphism(t, w)?;
    let inv = check_inverse(t, &g, bounds)?;
    check_symmetric_inverse(&g, w)?;
    let omega = omega_from_inverse(&g, w + 1);
    let cocycle_bounds = Bounds { max_weight: w + 1, ..bounds };
    let cocycle = Cohomology::new(l, w + 1).is_cocycle(&omega, cocycle_bounds)?;
    let action = co.to_action()?;
    let oop = check_ooperator(t, &action, bounds)?;
    let agree = cocycle.pass == oop.pass;
    let mut verdict = Verdict::from_witness("coadjoint-cocycle", bounds, cocycle.witness.clone());
    verdict.pass = cocycle.pass && inv.pass;
    Ok(CocycleComparison {
        inverse: g,
        omega,
        verdict: verdict.with_part(inv).with_part(cocycle).with_part(oop),
        agree,
    })
}

/// `t` from a degree-0 `ω` whose weight-2 part is nondegenerate: the inverse
/// of the comorphism with family `x ↦ Σ_j ⟨ω, x⊙e_j⟩ e_j*`.
pub fn candidate_from_omega(l: &LieInfty, omega: &SymElement, max_weight: usize) -> Result<LinearFamily> {
    let g = inverse_from_omega(l.space(), omega, max_weight + 1);
    invert_comorphism(&g, max_weight)
}
