use std::collections::BTreeSet;
use std::sync::Arc;

use crate::actions::action::adjoint_family;
use crate::actions::{Action, SumSpace};
use crate::error::{Error, Result};
use crate::graded::{odd, sign, Bounds, GradedSpace};
use crate::linfty::{
    check_linfty_morphism, check_morphism_into_dgla, end_space, endo_dgla, matrix_to_element, EndDgla,
    LieInfty, Matrix,
};
use crate::sym::{monomials_up_to, normalize, LinearFamily, Monomial, SymElement};
use crate::verdict::Verdict;

/// A representation of `(E, l)` on a complex `(V, d)`: degree +1 maps
/// `S^k(E) ⊗ V → V`, stored on `E⊕V` inputs with exactly one `V` letter.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    sum: SumSpace,
    source: LieInfty,
    target: LieInfty,
    phi: LinearFamily,
}

impl Representation {
    pub fn new(
        source: &LieInfty,
        v: Arc<GradedSpace>,
        d: &LinearFamily,
        phi: LinearFamily,
    ) -> Result<Self> {
        if d.source().as_ref() != v.as_ref() || !d.is_endo() {
            return Err(Error::malformed("the differential must act on V"));
        }
        if !d.is_zero() && (d.degree() != 1 || d.max_arity() != 1) {
            return Err(Error::malformed("a differential is a linear map of degree +1"));
        }
        let sum = SumSpace::new(source.space().clone(), v);
        if phi.source().as_ref() != sum.sum().as_ref() || !phi.is_endo() {
            return Err(Error::malformed("representation maps must be a family on E⊕V"));
        }
        if !phi.is_zero() && phi.degree() != 1 {
            return Err(Error::DegreeMismatch {
                key: "representation".into(),
                expected: 1,
                found: phi.degree(),
            });
        }
        for (input, value) in phi.terms() {
            if sum.v_letters(input) != 1 || sum.is_pure_v(input) {
                return Err(Error::malformed(format!(
                    "representation input `{}` needs E letters and exactly one V letter",
                    input.display(sum.sum())
                )));
            }
            if value.iter().any(|(m, _)| !sum.is_v_letter(m.letters()[0] as usize)) {
                return Err(Error::malformed(format!(
                    "representation value on `{}` must lie in V",
                    input.display(sum.sum())
                )));
            }
        }
        let mut d_on_v = LinearFamily::endo(sum.v().clone(), 1);
        d_on_v.add_scaled(d, &crate::graded::one())?;
        let mut phi_on_sum = LinearFamily::endo(sum.sum().clone(), 1);
        phi_on_sum.add_scaled(&phi.with_spaces(sum.sum().clone(), sum.sum().clone()), &crate::graded::one())?;
        Ok(Representation {
            target: LieInfty::new(d_on_v.with_spaces(sum.v().clone(), sum.v().clone()))?,
            sum,
            source: source.clone(),
            phi: phi_on_sum,
        })
    }

    pub fn zero(source: &LieInfty, v: Arc<GradedSpace>, d: &LinearFamily) -> Result<Self> {
        let sum = SumSpace::new(source.space().clone(), v.clone());
        Representation::new(source, v, d, LinearFamily::endo(sum.sum().clone(), 1))
    }

    /// Builds the maps from one matrix per `E`-monomial.
    pub fn from_matrices(
        source: &LieInfty,
        v: Arc<GradedSpace>,
        d: &LinearFamily,
        matrices: impl IntoIterator<Item = (Monomial, Matrix)>,
    ) -> Result<Self> {
        let sum = SumSpace::new(source.space().clone(), v.clone());
        let mut phi = LinearFamily::endo(sum.sum().clone(), 1);
        for (x, m) in matrices {
            for (&(t, s), c) in m.entries() {
                let input = sum.join(&x, &Monomial::letter(s));
                let out = sum.embed_v(&SymElement::monomial(Monomial::letter(t), c.clone()));
                phi.add(input, &out)?;
            }
        }
        Representation::new(source, v, d, phi)
    }

    pub fn source(&self) -> &LieInfty {
        &self.source
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        self.sum.v()
    }

    pub fn differential(&self) -> &LinearFamily {
        self.target.brackets()
    }

    pub fn sum(&self) -> &SumSpace {
        &self.sum
    }

    pub fn family(&self) -> &LinearFamily {
        &self.phi
    }

    /// The `E`-monomials carrying a nonzero map.
    pub fn support(&self) -> BTreeSet<Monomial> {
        self.phi.terms().map(|(m, _)| self.sum.split(m).0).collect()
    }

    /// `Φ(x)` as a matrix: `(t, s)` is the coefficient of `v_t` in `Φ(x)(v_s)`.
    pub fn matrix(&self, x: &Monomial) -> Matrix {
        let mut out = Matrix::zero();
        for s in 0..self.sum.v().dim() {
            let Some(value) = self.phi.get(&self.sum.join(x, &Monomial::letter(s))) else {
                continue;
            };
            for (m, c) in self.sum.project_v(value).iter() {
                out.add(m.letters()[0] as usize, s, c.clone());
            }
        }
        out
    }

    /// Checks the representation identities directly in `End(V)[1]` and,
    /// independently, as a Lie ∞-morphism into the structure-constant
    /// presentation of `End(V)[1]`. Fails with `InvalidComplex` if `d² ≠ 0`.
    pub fn check(&self, bounds: Bounds) -> Result<Verdict> {
        bounds.validate()?;
        let v = self.space();
        let end = EndDgla::new(v.clone(), self.differential())?;
        let direct = check_morphism_into_dgla(
            "identity",
            &self.source,
            &end,
            |x| Ok(self.matrix(x)),
            monomials_up_to(self.source.space(), bounds.max_weight),
            bounds,
        )?;
        let target = endo_dgla(v, self.differential())?;
        let routed = check_linfty_morphism(&self.morphism_family(bounds.max_weight), &self.source, &target, bounds)?;
        let mut routed_part = routed;
        routed_part.check = "endo-morphism".into();
        let mut out = Verdict::from_witness("representation", bounds, direct.witness.clone());
        out.pass = direct.pass;
        Ok(out.with_part(direct).with_part(routed_part))
    }

    /// The degree-0 family `S̄(E) → End(V)[1]` in the `{t|s}` basis.
    pub fn morphism_family(&self, max_weight: usize) -> LinearFamily {
        let end = Arc::new(end_space(self.space()));
        let dim = self.space().dim();
        LinearFamily::tabulate(
            self.source.space().clone(),
            end,
            0,
            self.support().into_iter().filter(|x| x.weight() <= max_weight),
            |x| matrix_to_element(&self.matrix(x), dim),
        )
    }

    /// The dual representation on `(V*, d*)`:
    /// `⟨*Φ(x)(α), v⟩ = -(-1)^{(|x|+1)|α|}⟨α, Φ(x)(v)⟩`.
    pub fn dual(&self) -> Representation {
        let v = self.space();
        let dual = Arc::new(v.dual());
        let e = self.source.space();
        let mut mats = Vec::new();
        for x in self.support() {
            let dx = x.degree(e);
            let mut out = Matrix::zero();
            for (&(t, s), c) in self.matrix(&x).entries() {
                let neg = !odd((dx + 1) * v.degree(t));
                out.add(s, t, if neg { -c.clone() } else { c.clone() });
            }
            mats.push((x, out));
        }
        let mut d = LinearFamily::endo(dual.clone(), 1);
        for (&(t, s), c) in Matrix::from_family(self.differential()).expect("linear").entries() {
            let neg = !odd(v.degree(t));
            let value = SymElement::monomial(Monomial::letter(s), if neg { -c.clone() } else { c.clone() });
            d.add_unchecked(Monomial::letter(t), &value);
        }
        Representation::from_matrices(&self.source, dual, &d, mats).expect("dual maps are well formed")
    }

    /// Conjugation by `v ↦ (-1)^{|v|} v`: the canonical identification of
    /// `V` with `V**` turns `dual∘dual` into this.
    pub fn parity_conjugate(&self) -> Representation {
        let v = self.space();
        let flip = |t: usize, s: usize| sign(odd(v.degree(t) + v.degree(s)));
        let mats = self.support().into_iter().map(|x| {
            let mut out = Matrix::zero();
            for (&(t, s), c) in self.matrix(&x).entries() {
                out.add(t, s, c * flip(t, s));
            }
            (x, out)
        });
        let mats: Vec<_> = mats.collect();
        let mut d = LinearFamily::endo(v.clone(), 1);
        for (&(t, s), c) in Matrix::from_family(self.differential()).expect("linear").entries() {
            d.add_unchecked(Monomial::letter(s), &SymElement::monomial(Monomial::letter(t), c * flip(t, s)));
        }
        Representation::from_matrices(&self.source, v.clone(), &d, mats).expect("same shape")
    }

    /// The action on `(V, d)` with `Φ_{k,1} = Φ_k` and no higher maps.
    pub fn to_action(&self) -> Result<Action> {
        Action::new(&self.source, &self.target, self.phi.clone())
    }

    /// `Φ̃` on `E⊕V` read off its componentwise formula: `l_k` on pure `E`
    /// inputs, and on `(x_1,…,x_k)` with the `V` letter in slot `i`,
    /// `(-1)^{|v|(|x_{i+1}|+…)} φ(…, v)`. The `V` letter is placed first in
    /// the word and the word is then normalized, so the sign is exercised.
    pub fn remark_family(&self) -> LinearFamily {
        let s = self.sum.sum();
        let mut out = self.sum.lift_e(self.source.brackets());
        out.add_scaled(&self.sum.lift_v(self.differential()), &crate::graded::one())
            .expect("degree +1 families");
        for x in self.support() {
            let m = self.matrix(&x);
            let xs: Vec<u16> = x.letters().to_vec();
            for (&(t, col), c) in m.entries() {
                let v = (self.sum.e().dim() + col) as u16;
                let mut word = vec![v];
                word.extend(&xs);
                let (canon, neg) = normalize(s, &word).expect("mixed word is nonzero");
                let slot_sign = odd(s.degree(v as usize) * x.degree(self.sum.e()));
                let value = self.sum.embed_v(&SymElement::monomial(Monomial::letter(t), c.clone()));
                let coeff = sign(neg ^ slot_sign);
                out.add_unchecked(canon, &value.scaled(&coeff));
            }
        }
        out
    }
}

/// `ad_x = l_{k+1}(x, ·)` on a copy of `E`, with `d = l₁`.
pub fn adjoint_representation(l: &LieInfty) -> Representation {
    let sum = SumSpace::new(l.space().clone(), l.space().clone());
    let phi = adjoint_family(l, &sum, 1);
    Representation::new(l, l.space().clone(), &l.brackets().component(1), phi)
        .expect("adjoint maps are well formed")
}

/// The dual of the adjoint representation, on `E*`.
pub fn coadjoint_representation(l: &LieInfty) -> Representation {
    adjoint_representation(l).dual()
}
