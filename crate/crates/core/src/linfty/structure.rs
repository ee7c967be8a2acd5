use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{koszul_sign, unshuffles, Bounds, GradedSpace};
use crate::sym::{monomials_up_to, normalize, Coderivation, LinearFamily, Monomial, SymElement};
use crate::verdict::{Verdict, Witness};

/// Degree +1 brackets `l = Σ l_k` on a graded space together with the
/// coderivation `M` they generate. `certified` records the weight bound up
/// to which `M∘M = 0` has been verified, if any.
#[derive(Clone, Debug)]
pub struct LieInfty {
    coder: Coderivation,
    certified: Option<usize>,
}

impl PartialEq for LieInfty {
    fn eq(&self, other: &Self) -> bool {
        self.coder == other.coder
    }
}

impl LieInfty {
    /// Wraps brackets without checking the generalized Jacobi identities.
    pub fn new(brackets: LinearFamily) -> Result<Self> {
        if !brackets.is_zero() && brackets.degree() != 1 {
            return Err(Error::DegreeMismatch {
                key: "brackets".into(),
                expected: 1,
                found: brackets.degree(),
            });
        }
        let mut brackets = brackets;
        if brackets.is_zero() && brackets.degree() != 1 {
            brackets = LinearFamily::endo(brackets.source().clone(), 1);
        }
        Ok(LieInfty {
            coder: Coderivation::from_family(brackets)?,
            certified: None,
        })
    }

    /// Wraps and verifies; fails with the Jacobi verdict if the check fails.
    pub fn certify(brackets: LinearFamily, bounds: Bounds) -> Result<Self> {
        let mut l = LieInfty::new(brackets)?;
        let v = check_jacobi(l.brackets(), bounds)?;
        if !v.pass {
            return Err(Error::NotCertified(Box::new(v)));
        }
        l.certified = Some(bounds.max_weight);
        Ok(l)
    }

    pub fn abelian(space: Arc<GradedSpace>) -> Self {
        LieInfty {
            coder: Coderivation::zero(space, 1),
            certified: Some(usize::MAX),
        }
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        self.coder.space()
    }

    pub fn brackets(&self) -> &LinearFamily {
        self.coder.family()
    }

    pub fn coder(&self) -> &Coderivation {
        &self.coder
    }

    pub fn certified_weight(&self) -> Option<usize> {
        self.certified
    }

    /// Certifies at `bounds` unless already certified at least that far.
    pub fn ensure_certified(&mut self, bounds: Bounds) -> Result<()> {
        if self.certified.is_some_and(|w| w >= bounds.max_weight) {
            return Ok(());
        }
        let v = check_jacobi(self.brackets(), bounds)?;
        if !v.pass {
            return Err(Error::NotCertified(Box::new(v)));
        }
        self.certified = Some(bounds.max_weight);
        Ok(())
    }

    /// `M(x)`
    pub fn apply(&self, x: &SymElement) -> SymElement {
        self.coder.eval(x)
    }
}

/// `Σ_{i+j=n+1} Σ_{σ∈Sh(i,n-i)} ε(σ) l_j(l_i(x_σ(1..i)), x_σ(i+1..n))`,
/// read directly off the unshuffle sum.
pub fn jacobi_defect(l: &LinearFamily, x: &Monomial) -> Result<SymElement> {
    let space = l.source();
    let n = x.weight();
    let degrees: Vec<i32> = x.degrees(space).to_vec();
    let mut out = SymElement::zero();
    for i in 1..=n {
        let blocks: Vec<usize> = if i == n { vec![n] } else { vec![i, n - i] };
        for sigma in unshuffles(&blocks, n.max(1))? {
            let word = sigma.permute(x.letters());
            let eps = koszul_sign(&sigma, &degrees)?;
            let (head, neg) = normalize(space, &word[..i]).expect("sub-word of a nonzero word");
            let Some(inner) = l.get(&head) else { continue };
            let mut arg = inner.clone();
            if i < n {
                let (tail, neg2) = normalize(space, &word[i..]).expect("sub-word of a nonzero word");
                arg = arg.mul(&SymElement::monomial(tail, crate::graded::sign(neg2)), space);
            }
            let c = if neg { -eps } else { eps };
            out.add_scaled(&l.eval(&arg), &c);
        }
    }
    Ok(out)
}

fn first_failure(
    space: &GradedSpace,
    bounds: Bounds,
    mut defect: impl FnMut(&Monomial) -> Result<SymElement>,
) -> Result<Option<Witness>> {
    for x in monomials_up_to(space, bounds.max_weight) {
        let d = defect(&x)?;
        if !d.is_zero() {
            return Ok(Some(Witness {
                monomial: x.display(space),
                weight: x.weight(),
                lhs: d.display(space),
                rhs: "0".into(),
            }));
        }
    }
    Ok(None)
}

/// Generalized Jacobi identities through the explicit unshuffle sum, on every
/// basis monomial of weight `≤ bounds.max_weight`.
pub fn check_jacobi(l: &LinearFamily, bounds: Bounds) -> Result<Verdict> {
    bounds.validate()?;
    check_degree(l)?;
    let w = first_failure(l.source(), bounds, |x| jacobi_defect(l, x))?;
    Ok(Verdict::from_witness("jacobi", bounds, w))
}

/// `M∘M = 0` through the coalgebra: full composite on every basis monomial.
pub fn check_square_zero(l: &LinearFamily, bounds: Bounds) -> Result<Verdict> {
    bounds.validate()?;
    check_degree(l)?;
    let m = Coderivation::from_family(l.clone())?;
    let w = first_failure(l.source(), bounds, |x| Ok(m.eval(&m.eval_monomial(x))))?;
    Ok(Verdict::from_witness("square-zero", bounds, w))
}

/// Both routes; the verdict carries each as a part and passes only when both
/// do.
pub fn check_jacobi_two_path(l: &LinearFamily, bounds: Bounds) -> Result<Verdict> {
    let a = check_jacobi(l, bounds)?;
    let b = check_square_zero(l, bounds)?;
    let mut v = Verdict::from_witness("jacobi-two-path", bounds, a.witness.clone());
    v.pass = a.pass && b.pass;
    Ok(v.with_part(a).with_part(b))
}

fn check_degree(l: &LinearFamily) -> Result<()> {
    if !l.is_endo() {
        return Err(Error::malformed("brackets must map a space to itself"));
    }
    if !l.is_zero() && l.degree() != 1 {
        return Err(Error::DegreeMismatch {
            key: "brackets".into(),
            expected: 1,
            found: l.degree(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::int;

    pub(crate) fn fixture_a() -> LinearFamily {
        let e = Arc::new(GradedSpace::new([("e", -1), ("f", -1)]).unwrap());
        let mut l = LinearFamily::endo(e.clone(), 1);
        l.add_term(Monomial::from_letters(&e, &[0, 1]).unwrap(), 0, int(-1))
            .unwrap();
        l
    }

    #[test]
    fn fixture_a_passes_both_routes() {
        let v = check_jacobi_two_path(&fixture_a(), Bounds::with_weight(5)).unwrap();
        assert!(v.pass, "{v}");
    }

    #[test]
    fn three_dim_perturbation_fails_at_weight_three() {
        // [e,f] = e, [e,g] = f, [f,g] = e on degree -1: not Jacobi
        let s = Arc::new(GradedSpace::new([("e", -1), ("f", -1), ("g", -1)]).unwrap());
        let m = |a: usize, b: usize| Monomial::from_letters(&s, &[a, b]).unwrap();
        let mut l = LinearFamily::endo(s.clone(), 1);
        l.add_term(m(0, 1), 0, int(-1)).unwrap();
        l.add_term(m(0, 2), 1, int(-1)).unwrap();
        l.add_term(m(1, 2), 0, int(-1)).unwrap();
        let v = check_jacobi_two_path(&l, Bounds::with_weight(4)).unwrap();
        assert!(!v.pass);
        assert_eq!(v.parts[0].witness_weight(), Some(3));
        assert_eq!(v.parts[0].witness_weight(), v.parts[1].witness_weight());
        assert_eq!(
            v.parts[0].witness.as_ref().unwrap().monomial,
            v.parts[1].witness.as_ref().unwrap().monomial
        );
    }

    #[test]
    fn abelian_passes() {
        let s = Arc::new(GradedSpace::new([("a", 0), ("b", 1)]).unwrap());
        assert!(check_jacobi(&LinearFamily::endo(s, 1), Bounds::default()).unwrap().pass);
    }
}
