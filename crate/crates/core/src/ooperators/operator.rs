use crate::actions::{adjoint_action, Action};
use crate::error::{Error, Result};
use crate::graded::{inv_factorial, koszul_sign, one, sign, unshuffles, Bounds};
use crate::linfty::{check_linfty_morphism, check_square_zero, compositions, LieInfty};
use crate::sym::{
    coproduct_terms, monomials_up_to, normalize, Coderivation, Comorphism, LinearFamily, Monomial,
    SymElement,
};
use crate::verdict::{Verdict, Witness};

fn check_candidate(action: &Action, t: &LinearFamily) -> Result<Comorphism> {
    let sum = action.sum();
    if t.source().as_ref() != sum.v().as_ref() || t.target().as_ref() != sum.e().as_ref() {
        return Err(Error::malformed("an O-operator candidate maps S̄(V) to E"));
    }
    Comorphism::from_family(t.clone())
}

/// The generating family of `Φ^T`: `v ↦ Σ ε φ(T(v_(1)) ⊙ v_(2))`, tabulated
/// on `V`-monomials of weight `≤ max_weight`.
pub fn phi_t(action: &Action, t: &LinearFamily, max_weight: usize) -> Result<LinearFamily> {
    let tc = check_candidate(action, t)?;
    let sum = action.sum();
    let v = sum.v();
    Ok(LinearFamily::tabulate(v.clone(), v.clone(), 1, monomials_up_to(v, max_weight), |w| {
        let mut out = SymElement::zero();
        for (a, b, neg) in coproduct_terms(v, w) {
            let ta = tc.eval_monomial(&a);
            if ta.is_zero() {
                continue;
            }
            let arg = sum.tensor(&ta, &SymElement::monomial(b, one()));
            out.add_scaled(&sum.project_v(&action.family().eval(&arg)), &sign(neg));
        }
        out
    }))
}

/// `Φ^T(v) = Φ_{T(v_(1))} v_(2)` with each `Φ_x` the full coderivation,
/// compared with the coderivation generated by [`phi_t`].
pub fn check_phi_t_coderivation(action: &Action, t: &LinearFamily, bounds: Bounds) -> Result<Verdict> {
    bounds.validate()?;
    let tc = check_candidate(action, t)?;
    let sum = action.sum();
    let v = sum.v();
    let q = Coderivation::from_family(phi_t(action, t, bounds.max_weight)?)?;
    for w in monomials_up_to(v, bounds.max_weight) {
        let mut direct = SymElement::zero();
        for (a, b, neg) in coproduct_terms(v, &w) {
            let ta = tc.eval_monomial(&a);
            let val = action.apply(&ta, &SymElement::monomial(b, one()));
            direct.add_scaled(&val, &sign(neg));
        }
        let generated = q.eval_monomial(&w);
        if direct != generated {
            return Ok(Verdict::fail(
                "phi-t-coderivation",
                bounds,
                Witness {
                    monomial: w.display(v),
                    weight: w.weight(),
                    lhs: generated.display(v),
                    rhs: direct.display(v),
                },
            ));
        }
    }
    Ok(Verdict::pass("phi-t-coderivation", bounds))
}

fn first_mismatch(
    check: &str,
    bounds: Bounds,
    inputs: impl IntoIterator<Item = Monomial>,
    source: &crate::graded::GradedSpace,
    target: &crate::graded::GradedSpace,
    mut sides: impl FnMut(&Monomial) -> (SymElement, SymElement),
) -> Verdict {
    for w in inputs {
        let (lhs, rhs) = sides(&w);
        if lhs != rhs {
            return Verdict::fail(
                check,
                bounds,
                Witness {
                    monomial: w.display(source),
                    weight: w.weight(),
                    lhs: lhs.display(target),
                    rhs: rhs.display(target),
                },
            );
        }
    }
    Verdict::pass(check, bounds)
}

/// `M_E∘T = T∘(Φ^T + M_V)` on every `V`-monomial of weight
/// `≤ bounds.max_weight`. Parts: the weight-one condition
/// `l₁(t₁v) = t₁(m₁v)`, the full coalgebra identity, and its projection
/// `l(T(v)) = t(Φ^T(v) + M_V(v))`. The verdict is the coalgebra identity's.
pub fn check_ooperator(t: &LinearFamily, action: &Action, bounds: Bounds) -> Result<Verdict> {
    bounds.validate()?;
    let tc = check_candidate(action, t)?;
    let sum = action.sum();
    let (e, v) = (sum.e(), sum.v());
    let l = action.source();
    let m = action.target();
    let mut d = phi_t(action, t, bounds.max_weight)?;
    d.add_scaled(&m.brackets().truncated(bounds.max_weight), &one())?;
    let dc = Coderivation::from_family(d.clone())?;

    let t1 = t.component(1);
    let l1 = l.brackets().component(1);
    let m1 = m.brackets().component(1);
    let weight_one = first_mismatch("weight-one", bounds, monomials_up_to(v, 1), v, e, |w| {
        (l1.eval(&t1.eval_monomial(w)), t1.eval(&m1.eval_monomial(w)))
    });
    let full = first_mismatch("comorphism-identity", bounds, monomials_up_to(v, bounds.max_weight), v, e, |w| {
        (l.apply(&tc.eval_monomial(w)), tc.eval(&dc.eval_monomial(w)))
    });
    let projected = first_mismatch("projected-identity", bounds, monomials_up_to(v, bounds.max_weight), v, e, |w| {
        (l.brackets().eval(&tc.eval_monomial(w)), t.eval(&d.eval_monomial(w)))
    });
    let mut out = Verdict::from_witness("ooperator", bounds, full.witness.clone());
    out.pass = full.pass;
    Ok(out.with_part(weight_one).with_part(full).with_part(projected))
}

/// An O-operator for the adjoint action, with `t: S̄(E) → E`.
pub fn check_rota_baxter(t: &LinearFamily, l: &LieInfty, bounds: Bounds) -> Result<Verdict> {
    let mut v = check_ooperator(t, &adjoint_action(l), bounds)?;
    v.check = "rota-baxter".into();
    Ok(v)
}

/// `m^T_n` read off the unshuffle formula, with `1/i!` for `i` arguments
/// of `t`:
/// `m_n(v) + Σ ε/i! Φ_{i,n-j}(t_{k_1}(…)⊙…⊙t_{k_i}(…), v_σ(j+1)⊙…⊙v_σ(n))`.
pub fn induced_bracket_formula(action: &Action, t: &LinearFamily, w: &Monomial) -> Result<SymElement> {
    check_candidate(action, t)?;
    let sum = action.sum();
    let (e, v) = (sum.e(), sum.v());
    let n = w.weight();
    let degrees: Vec<i32> = w.degrees(v).to_vec();
    let mut out = action.target().brackets().eval_monomial(w);
    for j in 1..n {
        for blocks in compositions(j) {
            let mut sizes = blocks.clone();
            sizes.push(n - j);
            for sigma in unshuffles(&sizes, n)? {
                let word = sigma.permute(w.letters());
                let mut x = SymElement::unit();
                let mut at = 0;
                for &b in &blocks {
                    let (mb, neg) = normalize(v, &word[at..at + b]).expect("sub-word of a nonzero word");
                    at += b;
                    x = x.mul(&t.eval_monomial(&mb).scaled(&sign(neg)), e);
                    if x.is_zero() {
                        break;
                    }
                }
                if x.is_zero() {
                    continue;
                }
                let (rest, neg) = normalize(v, &word[j..]).expect("sub-word of a nonzero word");
                let arg = sum.tensor(&x, &SymElement::monomial(rest, sign(neg)));
                let c = koszul_sign(&sigma, &degrees)? * inv_factorial(blocks.len());
                out.add_scaled(&sum.project_v(&action.family().eval(&arg)), &c);
            }
        }
    }
    Ok(out)
}

/// The structure `M_{V^T} = Φ^T + M_V` with its certificates.
#[derive(Clone, Debug)]
pub struct InducedStructure {
    pub structure: LieInfty,
    /// Parts: `square-zero`, `linfty-morphism` (of `T` into `E`) and
    /// `bracket-formula`.
    pub verdict: Verdict,
}

/// Refuses with [`Error::Refused`] unless `t` passes [`check_ooperator`].
pub fn induced_structure(t: &LinearFamily, action: &Action, bounds: Bounds) -> Result<InducedStructure> {
    let pre = check_ooperator(t, action, bounds)?;
    if !pre.pass {
        return Err(Error::Refused(format!("not an O-operator: {}", pre.summary())));
    }
    let v = action.sum().v();
    let mut mt = phi_t(action, t, bounds.max_weight)?;
    mt.add_scaled(&action.target().brackets().truncated(bounds.max_weight), &one())?;
    let structure = LieInfty::new(mt.clone())?;
    let square = check_square_zero(&mt, bounds)?;
    let morphism = check_linfty_morphism(t, &structure, action.source(), bounds)?;
    let mut formula = Verdict::pass("bracket-formula", bounds);
    for w in monomials_up_to(v, bounds.max_weight) {
        let expected = induced_bracket_formula(action, t, &w)?;
        let got = mt.eval_monomial(&w);
        if expected != got {
            formula = Verdict::fail(
                "bracket-formula",
                bounds,
                Witness {
                    monomial: w.display(v),
                    weight: w.weight(),
                    lhs: got.display(v),
                    rhs: expected.display(v),
                },
            );
            break;
        }
    }
    let mut verdict = Verdict::from_witness("induced-structure", bounds, square.witness.clone().or(morphism.witness.clone()));
    verdict.pass = square.pass && morphism.pass && formula.pass;
    Ok(InducedStructure {
        structure,
        verdict: verdict.with_part(square).with_part(morphism).with_part(formula),
    })
}
