use crate::actions::{Action, SumSpace};
use crate::error::{Error, Result};
use crate::graded::{odd, one, ratio, sign, Bounds, Scalar};
use crate::linfty::{check_square_zero, LieInfty};
use crate::sym::{
    coproduct_terms, extend_as_coderivation, monomials_up_to, rn_bracket, LinearFamily, Monomial,
    SymElement,
};
use crate::verdict::{Verdict, Witness};

/// An element `m ⊕ ρ` of `𝔏′ = M ⊕ R` inside `Coder(S̄(E⊕V))`: `m` is a
/// family `S̄(E) → E`, and `ρ` a family on the sum whose inputs contain at
/// least one `V` letter and whose values lie in `V`.
#[derive(Clone, Debug, PartialEq)]
pub struct LPrimeElement {
    sum: SumSpace,
    degree: i32,
    m: LinearFamily,
    rho: LinearFamily,
}

impl LPrimeElement {
    pub fn new(sum: &SumSpace, m: LinearFamily, rho: LinearFamily) -> Result<Self> {
        if m.source().as_ref() != sum.e().as_ref() || !m.is_endo() {
            return Err(Error::malformed("the M block is a family S̄(E) → E"));
        }
        if rho.source().as_ref() != sum.sum().as_ref() || !rho.is_endo() {
            return Err(Error::malformed("the R block is a family on E⊕V"));
        }
        let degree = match (m.is_zero(), rho.is_zero()) {
            (false, false) if m.degree() != rho.degree() => {
                return Err(Error::DegreeMismatch {
                    key: "R block".into(),
                    expected: m.degree(),
                    found: rho.degree(),
                })
            }
            (true, false) => rho.degree(),
            _ => m.degree(),
        };
        for (input, value) in rho.terms() {
            if sum.is_pure_e(input) {
                return Err(Error::malformed(format!(
                    "R block input `{}` has no V letter",
                    input.display(sum.sum())
                )));
            }
            if value.iter().any(|(o, _)| !sum.is_v_letter(o.letters()[0] as usize)) {
                return Err(Error::malformed(format!(
                    "R block value on `{}` must lie in V",
                    input.display(sum.sum())
                )));
            }
        }
        Ok(LPrimeElement {
            sum: sum.clone(),
            degree,
            m: retag(m, degree),
            rho: retag(rho, degree),
        })
    }

    pub fn zero(sum: &SumSpace, degree: i32) -> Self {
        LPrimeElement {
            sum: sum.clone(),
            degree,
            m: LinearFamily::endo(sum.e().clone(), degree),
            rho: LinearFamily::endo(sum.sum().clone(), degree),
        }
    }

    /// Splits a coderivation of `S̄(E⊕V)` into its blocks, or fails when it
    /// does not lie in `𝔏′`.
    pub fn from_ambient(sum: &SumSpace, f: &LinearFamily) -> Result<Self> {
        let mut m = LinearFamily::endo(sum.e().clone(), f.degree());
        let mut rho = LinearFamily::endo(sum.sum().clone(), f.degree());
        for (input, value) in f.terms() {
            if sum.is_pure_e(input) {
                if sum.project_e(value) != *value {
                    return Err(Error::malformed(format!(
                        "value on `{}` leaves E, so the coderivation is not in 𝔏′",
                        input.display(sum.sum())
                    )));
                }
                m.add_unchecked(input.clone(), value);
            } else {
                rho.add_unchecked(input.clone(), value);
            }
        }
        LPrimeElement::new(sum, m, rho)
    }

    /// `M_E + Υ + M_V`.
    pub fn from_action(action: &Action) -> Self {
        LPrimeElement::from_ambient(action.sum(), &action.semidirect_family())
            .expect("semidirect structures lie in 𝔏′")
    }

    pub fn sum(&self) -> &SumSpace {
        &self.sum
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn m(&self) -> &LinearFamily {
        &self.m
    }

    pub fn rho(&self) -> &LinearFamily {
        &self.rho
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero() && self.rho.is_zero()
    }

    /// `ρ₀`, the restriction of `ρ` to `S̄(V)`.
    pub fn rho0(&self) -> LinearFamily {
        self.sum.restrict_v(&self.rho)
    }

    /// `ρ_x = ρ(x ⊗ ·)` on `V`-inputs of weight `≤ max_weight`.
    pub fn rho_x(&self, x: &Monomial, max_weight: usize) -> LinearFamily {
        self.sum.slice(&self.rho, x, max_weight)
    }

    /// The element as one family on `E⊕V`.
    pub fn ambient(&self) -> LinearFamily {
        let mut out = self.sum.lift_e(&self.m);
        out.add_scaled(&self.rho, &one()).expect("blocks share a degree");
        out
    }

    pub fn add(&self, other: &LPrimeElement) -> Result<LPrimeElement> {
        let mut m = self.m.clone();
        m.add_scaled(&other.m, &one())?;
        let mut rho = self.rho.clone();
        rho.add_scaled(&other.rho, &one())?;
        LPrimeElement::new(&self.sum, m, rho)
    }

    pub fn scaled(&self, c: &Scalar) -> LPrimeElement {
        LPrimeElement {
            sum: self.sum.clone(),
            degree: self.degree,
            m: self.m.scaled(c),
            rho: self.rho.scaled(c),
        }
    }

    pub fn truncated(&self, max_weight: usize) -> LPrimeElement {
        LPrimeElement {
            sum: self.sum.clone(),
            degree: self.degree,
            m: self.m.truncated(max_weight),
            rho: self.rho.truncated(max_weight),
        }
    }

    /// Reads a degree +1 element as a structure on `E`, one on `V` and the
    /// mixed maps. Nothing is checked.
    pub fn to_action(&self) -> Result<Action> {
        if self.degree != 1 && !self.is_zero() {
            return Err(Error::DegreeMismatch {
                key: "𝔏′ element".into(),
                expected: 1,
                found: self.degree,
            });
        }
        let e = LieInfty::new(retag(self.m.clone(), 1))?;
        let v = LieInfty::new(retag(self.rho0(), 1))?;
        let phi = retag(self.rho.restricted(|m| !self.sum.is_pure_v(m)), 1);
        Action::new(&e, &v, phi)
    }
}

fn retag(f: LinearFamily, degree: i32) -> LinearFamily {
    if f.is_zero() && f.degree() != degree {
        LinearFamily::new(f.source().clone(), f.target().clone(), degree)
    } else {
        f
    }
}

/// `[f,g]_RN(v) = f(g^D(v)) - (-1)^{|f||g|} g(f^D(v))` for families on one space.
fn rn_at(f: &LinearFamily, g: &LinearFamily, v: &Monomial) -> SymElement {
    let mut out = f.eval(&extend_as_coderivation(g, v));
    let back = g.eval(&extend_as_coderivation(f, v));
    out.add_scaled(&back, &-sign(odd(f.degree()) && odd(g.degree())));
    out
}

/// `Σ_{x_(1)⊗x_(2)} ε (-1)^{|x_(1)||ρ′|} ρ_{x_(1)}(ρ′^D_{x_(2)}(v))` over the
/// unreduced coproduct of `x`, as a value on the sum.
fn rho_after_rho(a: &LPrimeElement, b: &LPrimeElement, x: &Monomial, v: &Monomial) -> SymElement {
    let sum = &a.sum;
    let e = sum.e();
    let empty = Monomial::from_sorted([]);
    let mut splits = vec![(empty.clone(), x.clone(), false), (x.clone(), empty, false)];
    splits.extend(coproduct_terms(e, x));
    let mut out = SymElement::zero();
    for (x1, x2, neg) in splits {
        let inner = sum.slice_coderivation(&b.rho, &x2, v);
        if inner.is_zero() {
            continue;
        }
        let arg = sum.tensor(&SymElement::monomial(x1.clone(), one()), &inner);
        let c = sign(neg ^ odd(x1.degree(e) * b.degree));
        out.add_scaled(&a.rho.eval(&arg), &c);
    }
    out
}

/// `[m⊕ρ, m′⊕ρ′]_RN` through the block formulas: `[m,m′]_RN` on `E`, and
/// `[m,ρ′] + [ρ,m′] + [ρ,ρ′]` with
/// `[m,ρ′](x⊗v) = -(-1)^{|m||ρ′|} ρ′_{m^D(x)}(v)` and
/// `[ρ,m′](x⊗v) = ρ_{m′^D(x)}(v)`. Exact on inputs of weight `≤ max_weight`.
pub fn lprime_bracket(a: &LPrimeElement, b: &LPrimeElement, max_weight: usize) -> Result<LPrimeElement> {
    if a.sum != b.sum {
        return Err(Error::malformed("𝔏′ elements over different spaces"));
    }
    let sum = &a.sum;
    let degree = a.degree + b.degree;
    let m = rn_bracket(&a.m, &b.m, max_weight)?;
    let (a0, b0) = (a.rho0(), b.rho0());
    let swap = sign(odd(a.degree) && odd(b.degree));
    let mut rho = LinearFamily::endo(sum.sum().clone(), degree);
    for input in monomials_up_to(sum.sum(), max_weight) {
        if sum.is_pure_e(&input) {
            continue;
        }
        let (x, w) = sum.split(&input);
        let value = if x.is_empty() {
            sum.embed_v(&rn_at(&a0, &b0, &w))
        } else {
            let wv = SymElement::monomial(w.clone(), one());
            let mut out = SymElement::zero();
            let md = extend_as_coderivation(&a.m, &x);
            if !md.is_zero() {
                let c = -sign(odd(a.degree) && odd(b.degree));
                out.add_scaled(&b.rho.eval(&sum.tensor(&md, &wv)), &c);
            }
            let md = extend_as_coderivation(&b.m, &x);
            if !md.is_zero() {
                out += &a.rho.eval(&sum.tensor(&md, &wv));
            }
            out += &rho_after_rho(a, b, &x, &w);
            out.add_scaled(&rho_after_rho(b, a, &x, &w), &-swap.clone());
            out
        };
        rho.add_unchecked(input, &value);
    }
    LPrimeElement::new(sum, retag(m, degree), rho)
}

/// The three conditions for `m⊕ρ` of degree +1 to be Maurer–Cartan:
/// `structure` (`m^D∘m^D = 0`), `module` (`ρ₀∘ρ₀^D = 0`) and `curved-action`
/// (`ρ_{m^D(x)}(v) = -[ρ₀,ρ_x]_RN(v) - ½ Σ ε (-1)^{|x_(1)|} [ρ_{x_(1)},ρ_{x_(2)}]_RN(v)`
/// over the reduced coproduct of `x`). A fourth part, `generic`, checks
/// `[a,a]_RN = 0` on the whole ambient coderivation; the verdict is the
/// conjunction of the first three.
pub fn mc_check_lprime(a: &LPrimeElement, bounds: Bounds) -> Result<Verdict> {
    bounds.validate()?;
    if a.degree != 1 && !a.is_zero() {
        return Err(Error::DegreeMismatch {
            key: "𝔏′ element".into(),
            expected: 1,
            found: a.degree,
        });
    }
    let structure = relabel(check_square_zero(&retag(a.m.clone(), 1), bounds)?, "structure");
    let module = relabel(check_square_zero(&retag(a.rho0(), 1), bounds)?, "module");
    let curved = check_curved_action(a, bounds);
    let generic = relabel(check_square_zero(&retag(a.ambient(), 1), bounds)?, "generic");
    let witness = [&structure, &module, &curved]
        .iter()
        .find_map(|p| p.witness.clone());
    let mut out = Verdict::from_witness("lprime-mc", bounds, witness);
    out.pass = structure.pass && module.pass && curved.pass;
    Ok(out
        .with_part(structure)
        .with_part(module)
        .with_part(curved)
        .with_part(generic))
}

fn check_curved_action(a: &LPrimeElement, bounds: Bounds) -> Verdict {
    let sum = &a.sum;
    let (e, v) = (sum.e(), sum.v());
    let w = bounds.max_weight;
    let rho0 = a.rho0();
    let half = ratio(1, 2);
    for input in monomials_up_to(sum.sum(), w) {
        let (x, u) = sum.split(&input);
        if x.is_empty() || u.is_empty() {
            continue;
        }
        let cap = w - x.weight();
        let uv = SymElement::monomial(u.clone(), one());
        let lhs = sum.project_v(&a.rho.eval(&sum.tensor(&extend_as_coderivation(&a.m, &x), &uv)));
        let mut rhs = rn_at(&rho0, &a.rho_x(&x, cap), &u).scaled(&-one());
        for (x1, x2, neg) in coproduct_terms(e, &x) {
            let c: Scalar = -&half * sign(neg ^ odd(x1.degree(e)));
            let inner = rn_at(&a.rho_x(&x1, cap), &a.rho_x(&x2, cap), &u);
            rhs.add_scaled(&inner, &c);
        }
        if lhs != rhs {
            return Verdict::fail(
                "curved-action",
                bounds,
                Witness {
                    monomial: input.display(sum.sum()),
                    weight: input.weight(),
                    lhs: lhs.display(v),
                    rhs: rhs.display(v),
                },
            );
        }
    }
    Verdict::pass("curved-action", bounds)
}

/// Twisting of `𝔏′` by a Maurer–Cartan `a`: `a + a′` is Maurer–Cartan iff
/// `[a,a′]_RN + ½[a′,a′]_RN = 0`. Parts: `twisted` (that equation, via block
/// brackets) and `sum` (`[a+a′, a+a′]_RN = 0` generically). The verdict is
/// the twisted one.
pub fn twisted_mc_check(a: &LPrimeElement, a_prime: &LPrimeElement, bounds: Bounds) -> Result<Verdict> {
    bounds.validate()?;
    let w = bounds.max_weight;
    let mut eq = lprime_bracket(a, a_prime, w)?.ambient();
    eq.add_scaled(&lprime_bracket(a_prime, a_prime, w)?.ambient(), &ratio(1, 2))?;
    let sum = &a.sum;
    let twisted = match eq.terms().next() {
        None => Verdict::pass("twisted", bounds),
        Some((m, value)) => Verdict::fail(
            "twisted",
            bounds,
            Witness {
                monomial: m.display(sum.sum()),
                weight: m.weight(),
                lhs: value.display(sum.sum()),
                rhs: "0".into(),
            },
        ),
    };
    let total = a.add(a_prime)?;
    let generic = relabel(check_square_zero(&retag(total.ambient(), 1), bounds)?, "sum");
    let mut out = Verdict::from_witness("lprime-twisted-mc", bounds, twisted.witness.clone());
    out.pass = twisted.pass;
    Ok(out.with_part(twisted).with_part(generic))
}

fn relabel(mut v: Verdict, check: &str) -> Verdict {
    v.check = check.into();
    v
}
