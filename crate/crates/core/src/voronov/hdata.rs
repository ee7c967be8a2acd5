use crate::actions::{Action, SumSpace};
use crate::error::{Error, Result};
use crate::graded::{inv_factorial, odd, one, sign, Bounds, Scalar};
use crate::linfty::check_square_zero;
use crate::ooperators::check_ooperator;
use crate::sym::{
    coproduct_terms, extend_as_coderivation, monomials_up_to, rn_bracket, Comorphism, LinearFamily,
    Monomial, SymElement,
};
use crate::verdict::{Verdict, Witness};
use crate::voronov::LPrimeElement;

/// An element `t` of `𝔥 = Hom(S̄(V), E)`, seen as the `S̄(E)`-linear
/// coderivation `𝔱` of `S̄(E⊕V)` it generates.
#[derive(Clone, Debug, PartialEq)]
pub struct HElement {
    sum: SumSpace,
    t: LinearFamily,
}

impl HElement {
    pub fn new(sum: &SumSpace, t: LinearFamily) -> Result<Self> {
        if t.source().as_ref() != sum.v().as_ref() || t.target().as_ref() != sum.e().as_ref() {
            return Err(Error::malformed("an element of 𝔥 maps S̄(V) to E"));
        }
        Ok(HElement { sum: sum.clone(), t })
    }

    pub fn zero(sum: &SumSpace, degree: i32) -> Self {
        HElement {
            sum: sum.clone(),
            t: LinearFamily::new(sum.v().clone(), sum.e().clone(), degree),
        }
    }

    pub fn family(&self) -> &LinearFamily {
        &self.t
    }

    pub fn degree(&self) -> i32 {
        self.t.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.t.is_zero()
    }

    /// `t` as a family on `E⊕V`, generating `𝔱`.
    pub fn lift(&self) -> LinearFamily {
        self.sum.lift_ve(&self.t)
    }

    /// `𝔱(x⊗v) - (-1)^{|x||t|} x·𝔱(v)`, zero for every `x`, `v`.
    pub fn linearity_defect(&self, x: &Monomial, v: &Monomial) -> SymElement {
        let s = self.sum.sum();
        let lifted = self.lift();
        let xv = self.sum.join(x, v);
        let mut out = extend_as_coderivation(&lifted, &xv);
        let tv = extend_as_coderivation(&lifted, &v.shifted(self.sum.e().dim()));
        let xtv = SymElement::monomial(x.clone(), one()).mul(&tv, s);
        out.add_scaled(&xtv, &-sign(odd(x.degree(self.sum.e()) * self.degree())));
        out
    }

    pub fn add(&self, other: &HElement) -> Result<HElement> {
        let mut t = self.t.clone();
        t.add_scaled(&other.t, &one())?;
        Ok(HElement { sum: self.sum.clone(), t })
    }

    pub fn scaled(&self, c: &Scalar) -> HElement {
        HElement {
            sum: self.sum.clone(),
            t: self.t.scaled(c),
        }
    }
}

/// The V-data `(Coder(S̄(E⊕V)), 𝔥, P, Δ)` with `P(Q) = p_E∘Q∘i_V` and `Δ` a
/// Maurer–Cartan element of `𝔏′`. Brackets are exact on inputs of weight
/// `≤ bounds.max_weight`.
#[derive(Clone, Debug)]
pub struct VData {
    delta: LPrimeElement,
    action: Action,
    bounds: Bounds,
}

impl VData {
    /// Refuses with [`Error::Refused`] unless `[Δ,Δ] = 0` on the checked range.
    pub fn new(delta: LPrimeElement, bounds: Bounds) -> Result<Self> {
        bounds.validate()?;
        let action = delta.to_action()?;
        let square = check_square_zero(&action.semidirect_family(), bounds)?;
        if !square.pass {
            return Err(Error::Refused(format!(
                "Δ is not Maurer–Cartan: {}",
                square.summary()
            )));
        }
        Ok(VData {
            delta,
            action,
            bounds,
        })
    }

    /// `Δ = M_E + Υ + M_V`.
    pub fn from_action(action: &Action, bounds: Bounds) -> Result<Self> {
        VData::new(LPrimeElement::from_action(action), bounds)
    }

    pub fn delta(&self) -> &LPrimeElement {
        &self.delta
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn sum(&self) -> &SumSpace {
        self.delta.sum()
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    /// `P(Q) = p_E∘Q∘i_V`.
    pub fn project(&self, q: &LinearFamily) -> HElement {
        HElement {
            sum: self.sum().clone(),
            t: self.sum().restrict_ve(q),
        }
    }

    pub fn element(&self, t: LinearFamily) -> Result<HElement> {
        HElement::new(self.sum(), t)
    }

    /// `[…[x, a₁]_RN…, a_k]_RN` in `Coder(S̄(E⊕V))`.
    pub fn nested(&self, x: &LinearFamily, args: &[&HElement]) -> Result<LinearFamily> {
        let w = self.bounds.max_weight;
        let mut acc = x.truncated(w);
        for a in args {
            acc = rn_bracket(&acc, &a.lift(), w)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    /// `∂_k(t₁,…,t_k) = P([…[Δ,t₁]_RN…,t_k]_RN)`.
    pub fn derived_bracket(&self, args: &[&HElement]) -> Result<HElement> {
        if args.is_empty() {
            return Err(Error::malformed("derived brackets take at least one argument"));
        }
        self.bounds.check_arity("derived bracket arity", args.len())?;
        Ok(self.project(&self.nested(&self.delta.ambient(), args)?))
    }

    /// `∂_k(t,…,t)` for `k = 1..=max_weight` along one chain of brackets.
    pub fn derived_powers(&self, t: &HElement) -> Result<Vec<HElement>> {
        let w = self.bounds.max_weight;
        let lifted = t.lift();
        let mut acc = self.delta.ambient().truncated(w);
        let mut out = Vec::with_capacity(w);
        for _ in 0..w {
            acc = rn_bracket(&acc, &lifted, w)?;
            out.push(self.project(&acc));
        }
        Ok(out)
    }

    /// The closed form for a degree zero `t`:
    /// `∂₁t = l₁t - t∘M_V` and
    /// `∂_k(t,…,t)(v) = l_k(t(v_(1)),…,t(v_(k))) - k·t(Φ_{t(v_(1))⊙…⊙t(v_(k-1))} v_(k))`.
    pub fn derived_power_fast(&self, t: &HElement, k: usize) -> Result<HElement> {
        if !t.is_zero() && t.degree() != 0 {
            return Err(Error::DegreeMismatch {
                key: "𝔥 element".into(),
                expected: 0,
                found: t.degree(),
            });
        }
        if k == 0 {
            return Err(Error::malformed("derived brackets take at least one argument"));
        }
        let sum = self.sum();
        let (e, v) = (sum.e(), sum.v());
        let l = self.action.source();
        let mv = self.action.target();
        let tf = t.family();
        let tc = Comorphism::from_family(tf.clone())?;
        let lk = l.brackets().component(k);
        let kf = inv_factorial(k).recip();
        let value = LinearFamily::tabulate(v.clone(), e.clone(), 1, monomials_up_to(v, self.bounds.max_weight), |w| {
            if k == 1 {
                let mut out = l.brackets().component(1).eval(&tf.eval_monomial(w));
                out -= &tf.eval(&mv.apply(&SymElement::monomial(w.clone(), one())));
                return out;
            }
            if w.weight() < k {
                return SymElement::zero();
            }
            let tw = tc.eval_monomial(w);
            let mut out = lk.eval(&tw.weight_component(k));
            for (a, b, neg) in coproduct_terms(v, w) {
                let x = tc.eval_monomial(&a).weight_component(k - 1);
                if x.is_zero() {
                    continue;
                }
                let phi = self.action.apply(&x, &SymElement::monomial(b, one()));
                out.add_scaled(&tf.eval(&phi), &-sign(neg));
            }
            out.scaled(&kf)
        });
        self.element(value)
    }
}

fn first_nonzero(check: &str, bounds: Bounds, f: &LinearFamily) -> Verdict {
    match f.terms().next() {
        None => Verdict::pass(check, bounds),
        Some((m, value)) => Verdict::fail(
            check,
            bounds,
            Witness {
                monomial: m.display(f.source()),
                weight: m.weight(),
                lhs: value.display(f.target()),
                rhs: "0".into(),
            },
        ),
    }
}

/// `Σ_k 1/k! ∂_k(t,…,t)` from a list of powers.
fn mc_sum(powers: &[HElement]) -> Result<LinearFamily> {
    let first = powers[0].family();
    let mut out = LinearFamily::new(first.source().clone(), first.target().clone(), 1);
    for (i, p) in powers.iter().enumerate() {
        out.add_scaled(p.family(), &inv_factorial(i + 1))?;
    }
    Ok(out)
}

/// `t ∈ MC(𝔥_Δ)` evaluated weight by weight. Parts: `generic` (nested
/// brackets), `fast` (closed form), `derived-brackets` (the two agree power
/// by power) and `ooperator` ([`check_ooperator`] for the action read off
/// `Δ`). The verdict is the generic one.
pub fn mc_check_h(data: &VData, t: &HElement) -> Result<Verdict> {
    let bounds = data.bounds();
    let generic_powers = data.derived_powers(t)?;
    let mut fast_powers = Vec::with_capacity(generic_powers.len());
    for k in 1..=generic_powers.len() {
        fast_powers.push(data.derived_power_fast(t, k)?);
    }
    let generic = first_nonzero("generic", bounds, &mc_sum(&generic_powers)?);
    let fast = first_nonzero("fast", bounds, &mc_sum(&fast_powers)?);
    let mut agree = Verdict::pass("derived-brackets", bounds);
    for (g, f) in generic_powers.iter().zip(&fast_powers) {
        if let Some((m, a, b)) = g.family().first_difference(f.family()) {
            let sum = data.sum();
            agree = Verdict::fail(
                "derived-brackets",
                bounds,
                Witness {
                    monomial: m.display(sum.v()),
                    weight: m.weight(),
                    lhs: a.display(sum.e()),
                    rhs: b.display(sum.e()),
                },
            );
            break;
        }
    }
    let oop = check_ooperator(t.family(), data.action(), bounds)?;
    let mut out = Verdict::from_witness("mc-h", bounds, generic.witness.clone());
    out.pass = generic.pass;
    Ok(out
        .with_part(generic)
        .with_part(fast)
        .with_part(agree)
        .with_part(oop))
}
