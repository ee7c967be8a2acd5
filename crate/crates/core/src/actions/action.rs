use crate::actions::{Representation, SumSpace};
use crate::error::{Error, Result};
use crate::graded::Bounds;
use crate::linfty::{check_morphism_into_dgla, check_square_zero, CoderDgla, LieInfty};
use crate::sym::{monomials_up_to, normalize, LinearFamily, Monomial, SymElement};
use crate::verdict::Verdict;

/// A Lie ∞-action of `(E, l)` on `(V, m)`, stored by the maps
/// `Φ_{k,i}: S^k(E)⊗S^i(V) → V` as one degree +1 family on `E⊕V` whose inputs
/// are mixed and whose outputs lie in `V`.
#[derive(Clone, Debug, PartialEq)]
pub struct Action {
    sum: SumSpace,
    source: LieInfty,
    target: LieInfty,
    phi: LinearFamily,
}

impl Action {
    pub fn new(source: &LieInfty, target: &LieInfty, phi: LinearFamily) -> Result<Self> {
        let sum = SumSpace::new(source.space().clone(), target.space().clone());
        if phi.source().as_ref() != sum.sum().as_ref() || !phi.is_endo() {
            return Err(Error::malformed("action maps must be a family on E⊕V"));
        }
        if !phi.is_zero() && phi.degree() != 1 {
            return Err(Error::DegreeMismatch {
                key: "action".into(),
                expected: 1,
                found: phi.degree(),
            });
        }
        for (input, value) in phi.terms() {
            if sum.is_pure_e(input) || sum.is_pure_v(input) {
                return Err(Error::malformed(format!(
                    "action input `{}` must involve both E and V",
                    input.display(sum.sum())
                )));
            }
            if value.iter().any(|(m, _)| !sum.is_v_letter(m.letters()[0] as usize)) {
                return Err(Error::malformed(format!(
                    "action value on `{}` must lie in V",
                    input.display(sum.sum())
                )));
            }
        }
        let mut phi_on_sum = LinearFamily::endo(sum.sum().clone(), 1);
        for (input, value) in phi.terms() {
            phi_on_sum.add_unchecked(input.clone(), value);
        }
        Ok(Action {
            sum,
            source: source.clone(),
            target: target.clone(),
            phi: phi_on_sum,
        })
    }

    pub fn zero(source: &LieInfty, target: &LieInfty) -> Self {
        let sum = SumSpace::new(source.space().clone(), target.space().clone());
        let phi = LinearFamily::endo(sum.sum().clone(), 1);
        Action {
            sum,
            source: source.clone(),
            target: target.clone(),
            phi,
        }
    }

    pub fn sum(&self) -> &SumSpace {
        &self.sum
    }

    pub fn source(&self) -> &LieInfty {
        &self.source
    }

    pub fn target(&self) -> &LieInfty {
        &self.target
    }

    pub fn family(&self) -> &LinearFamily {
        &self.phi
    }

    /// The generating family of `Φ_x`, on `V`-inputs of weight `≤ max_weight`.
    pub fn slice(&self, x: &Monomial, max_weight: usize) -> LinearFamily {
        self.sum.slice(&self.phi, x, max_weight)
    }

    /// `Φ_x(w)` for `x ∈ S̄(E)`, `w ∈ S̄(V)`, with `Φ_x` the full coderivation.
    pub fn apply(&self, x: &SymElement, w: &SymElement) -> SymElement {
        self.sum.slice_apply(&self.phi, x, w)
    }

    /// `l + Φ + m`: the brackets of `M_{E⊕V} = M_E + Υ + M_V`.
    pub fn semidirect_family(&self) -> LinearFamily {
        let mut out = self.sum.lift_e(self.source.brackets());
        out.add_scaled(&self.sum.lift_v(self.target.brackets()), &crate::graded::one())
            .expect("degree +1 families");
        out.add_scaled(&self.phi, &crate::graded::one())
            .expect("degree +1 families");
        out
    }

    pub fn semidirect(&self) -> Result<LieInfty> {
        LieInfty::new(self.semidirect_family())
    }

    /// The action is valid iff the semidirect structure squares to zero.
    /// A second part re-derives the verdict from the morphism identity into
    /// `Coder(S̄(V))[1]`; the two always agree.
    pub fn check(&self, bounds: Bounds) -> Result<Verdict> {
        bounds.validate()?;
        let square = check_square_zero(&self.semidirect_family(), bounds)?;
        let morphism = self.check_as_morphism(bounds)?;
        let mut v = Verdict::from_witness("action", bounds, square.witness.clone());
        v.pass = square.pass;
        Ok(v.with_part(relabel(square, "semidirect-square-zero")).with_part(morphism))
    }

    /// `Φ_{M_E(x)} = ∂_{M_V}Φ_x + ½ Σ ε ⟦Φ_{x_(1)}, Φ_{x_(2)}⟧` for every
    /// `x` of weight `< max_weight`, compared on `V`-inputs of weight
    /// `≤ max_weight - |x|` so the range matches the semidirect check.
    pub fn check_as_morphism(&self, bounds: Bounds) -> Result<Verdict> {
        let w = bounds.max_weight;
        for x in monomials_up_to(self.sum.e(), w.saturating_sub(1)) {
            let cap = w - x.weight();
            let dgla = CoderDgla::new(&self.target, cap);
            let v = check_morphism_into_dgla(
                "coder-morphism",
                &self.source,
                &dgla,
                |y| Ok(self.slice(y, cap)),
                [x],
                bounds,
            )?;
            if !v.pass {
                return Ok(v);
            }
        }
        Ok(Verdict::pass("coder-morphism", bounds))
    }

    /// The `Φ_{k,1}` part, a representation on `(V, m_1)`.
    pub fn linear_representation(&self) -> Result<Representation> {
        let linear = self.phi.restricted(|m| self.sum.v_letters(m) == 1);
        Representation::new(
            &self.source,
            self.sum.v().clone(),
            &self.target.brackets().component(1),
            linear,
        )
    }
}

fn relabel(mut v: Verdict, check: &str) -> Verdict {
    v.check = check.into();
    v
}

/// `Φ_{k,i}(x, w) = l_{k+i}(x, w)` on mixed inputs with at most `max_v`
/// letters from the copy of `E`.
pub(crate) fn adjoint_family(l: &LieInfty, sum: &SumSpace, max_v: usize) -> LinearFamily {
    let e = l.space();
    let mut phi = LinearFamily::endo(sum.sum().clone(), 1);
    for m in monomials_up_to(sum.sum(), l.brackets().max_arity()) {
        let k = sum.v_letters(&m);
        if k == 0 || k > max_v || k == m.weight() {
            continue;
        }
        let (x, w) = sum.split(&m);
        let word: Vec<u16> = x.letters().iter().chain(w.letters()).copied().collect();
        let Some((canon, neg)) = normalize(e, &word) else { continue };
        let value = l.brackets().eval_monomial(&canon);
        let value = sum.embed_v(&value).scaled(&crate::graded::sign(neg));
        phi.add_unchecked(m, &value);
    }
    phi
}

/// The adjoint action of a Lie ∞-algebra on itself.
pub fn adjoint_action(l: &LieInfty) -> Action {
    let sum = SumSpace::new(l.space().clone(), l.space().clone());
    let phi = adjoint_family(l, &sum, usize::MAX);
    Action::new(l, l, phi).expect("adjoint maps are well formed")
}
