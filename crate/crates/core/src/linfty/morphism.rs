//! Lie ∞-morphisms: between structure-constant algebras, and into symmetric
//! DGLAs.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graded::{front_mask_odd, inv_factorial, koszul_sign, ratio, sign, split_masks, unshuffles, Bounds};
use crate::linfty::dgla::SymmetricDgla;
use crate::linfty::LieInfty;
use crate::sym::{monomials_up_to, normalize, Comorphism, LinearFamily, Monomial, SymElement};
use crate::verdict::{Verdict, Witness};

pub(crate) fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Right-hand side of the morphism identity read off the definition:
/// `Σ_{k_1+…+k_j=n} Σ_{σ∈Sh(k_1,…,k_j)} ε(σ)/j! m_j(Φ(B_1),…,Φ(B_j))`.
fn morphism_rhs(phi: &LinearFamily, target: &LieInfty, x: &Monomial) -> Result<SymElement> {
    let src = phi.source();
    let tgt = target.space();
    let n = x.weight();
    let degrees: Vec<i32> = x.degrees(src).to_vec();
    let mut out = SymElement::zero();
    for blocks in compositions(n) {
        if blocks.len() > target.brackets().max_arity() {
            continue;
        }
        for sigma in unshuffles(&blocks, n)? {
            let word = sigma.permute(x.letters());
            let mut arg = SymElement::unit();
            let mut at = 0;
            for &b in &blocks {
                let (m, neg) = normalize(src, &word[at..at + b]).expect("sub-word of a nonzero word");
                at += b;
                arg = arg.mul(&phi.eval_monomial(&m).scaled(&sign(neg)), tgt);
                if arg.is_zero() {
                    break;
                }
            }
            if arg.is_zero() {
                continue;
            }
            let c = koszul_sign(&sigma, &degrees)? * inv_factorial(blocks.len());
            out.add_scaled(&target.brackets().eval(&arg), &c);
        }
    }
    Ok(out)
}

/// `Φ∘M_E = M_V∘Φ` for the comorphism generated by a degree-0 family, checked
/// two ways: as a coalgebra identity and through the unshuffle definition.
pub fn check_linfty_morphism(
    phi: &LinearFamily,
    source: &LieInfty,
    target: &LieInfty,
    bounds: Bounds,
) -> Result<Verdict> {
    bounds.validate()?;
    if phi.source() != source.space() || phi.target() != target.space() {
        return Err(Error::malformed("morphism family does not match the structures"));
    }
    let f = Comorphism::from_family(phi.clone())?;
    let src = source.space();
    let tgt = target.space();
    let mut coalgebra = None;
    let mut definition = None;
    for x in monomials_up_to(src, bounds.max_weight) {
        let mx = source.coder().eval_monomial(&x);
        if coalgebra.is_none() {
            let lhs = f.eval(&mx);
            let rhs = target.apply(&f.eval_monomial(&x));
            if lhs != rhs {
                coalgebra = Some(Witness {
                    monomial: x.display(src),
                    weight: x.weight(),
                    lhs: lhs.display(tgt),
                    rhs: rhs.display(tgt),
                });
            }
        }
        if definition.is_none() {
            let lhs = phi.eval(&mx);
            let rhs = morphism_rhs(phi, target, &x)?;
            if lhs != rhs {
                definition = Some(Witness {
                    monomial: x.display(src),
                    weight: x.weight(),
                    lhs: lhs.display(tgt),
                    rhs: rhs.display(tgt),
                });
            }
        }
        if coalgebra.is_some() && definition.is_some() {
            break;
        }
    }
    let a = Verdict::from_witness("comorphism-identity", bounds, coalgebra);
    let b = Verdict::from_witness("unshuffle-identity", bounds, definition);
    let mut v = Verdict::from_witness("linfty-morphism", bounds, a.witness.clone().or(b.witness.clone()));
    v.pass = a.pass && b.pass;
    Ok(v.with_part(a).with_part(b))
}

/// The Lie ∞-morphism identity for a map `Φ: S̄(E) → 𝔤` of degree 0 into a
/// symmetric DGLA:
/// `Φ(M_E(x)) = ∂Φ(x) + ½ Σ ε ⟦Φ(x_(1)), Φ(x_(2))⟧`,
/// on every input listed. `image(y)` has degree `|y|` in `𝔤`.
pub fn check_morphism_into_dgla<D: SymmetricDgla>(
    check: &str,
    source: &LieInfty,
    dgla: &D,
    mut image: impl FnMut(&Monomial) -> Result<D::Elem>,
    inputs: impl IntoIterator<Item = Monomial>,
    bounds: Bounds,
) -> Result<Verdict> {
    let space = source.space();
    let mut cache: HashMap<Monomial, D::Elem> = HashMap::new();
    let mut get = |m: &Monomial, cache: &mut HashMap<Monomial, D::Elem>| -> Result<D::Elem> {
        if let Some(v) = cache.get(m) {
            return Ok(v.clone());
        }
        let v = image(m)?;
        cache.insert(m.clone(), v.clone());
        Ok(v)
    };
    let half = ratio(1, 2);
    for x in inputs {
        let mut lhs = dgla.zero();
        for (y, c) in source.coder().eval_monomial(&x).iter() {
            let iy = get(y, &mut cache)?;
            dgla.add_scaled(&mut lhs, &iy, c);
        }
        let ix = get(&x, &mut cache)?;
        let mut rhs = dgla.differential(&ix, x.degree(space));
        let degrees = x.degrees(space);
        for (s, c) in split_masks(x.weight()) {
            let (a, b) = (x.select(s), x.select(c));
            let ia = get(&a, &mut cache)?;
            let ib = get(&b, &mut cache)?;
            let br = dgla.bracket(&ia, a.degree(space), &ib, b.degree(space));
            let coeff = if front_mask_odd(&degrees, s) { -half.clone() } else { half.clone() };
            dgla.add_scaled(&mut rhs, &br, &coeff);
        }
        if lhs != rhs {
            return Ok(Verdict::fail(
                check,
                bounds,
                Witness {
                    monomial: x.display(space),
                    weight: x.weight(),
                    lhs: dgla.display(&lhs),
                    rhs: dgla.display(&rhs),
                },
            ));
        }
    }
    Ok(Verdict::pass(check, bounds))
}
