use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{GradedSpace, Scalar};
use crate::sym::element::SymElement;
use crate::sym::monomial::Monomial;

/// A finitely supported map `S̄(source) → target` of fixed degree, stored by
/// its values on canonical basis monomials. Graded symmetry is automatic
/// because the keys are canonical.
#[derive(Clone, Debug)]
pub struct LinearFamily {
    source: Arc<GradedSpace>,
    target: Arc<GradedSpace>,
    degree: i32,
    terms: BTreeMap<Monomial, SymElement>,
}

impl PartialEq for LinearFamily {
    fn eq(&self, other: &Self) -> bool {
        // the degree of a zero family is immaterial
        self.source == other.source
            && self.target == other.target
            && self.terms == other.terms
            && (self.terms.is_empty() || self.degree == other.degree)
    }
}

impl LinearFamily {
    pub fn new(source: Arc<GradedSpace>, target: Arc<GradedSpace>, degree: i32) -> Self {
        LinearFamily {
            source,
            target,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A family on one space (`source = target`).
    pub fn endo(space: Arc<GradedSpace>, degree: i32) -> Self {
        LinearFamily::new(space.clone(), space, degree)
    }

    pub fn source(&self) -> &Arc<GradedSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedSpace> {
        &self.target
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn is_endo(&self) -> bool {
        Arc::ptr_eq(&self.source, &self.target) || self.source == self.target
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &SymElement)> {
        self.terms.iter()
    }

    pub fn get(&self, input: &Monomial) -> Option<&SymElement> {
        self.terms.get(input)
    }

    pub fn max_arity(&self) -> usize {
        self.terms.keys().map(Monomial::weight).max().unwrap_or(0)
    }

    /// Adds `output` to the value on `input`, checking weight and degree.
    pub fn add(&mut self, input: Monomial, output: &SymElement) -> Result<()> {
        if output.is_zero() {
            return Ok(());
        }
        let expected = input.degree(&self.source) + self.degree;
        for (m, _) in output.iter() {
            if m.weight() != 1 {
                return Err(Error::malformed(format!(
                    "family output `{}` is not linear",
                    output.display(&self.target)
                )));
            }
            if m.letters()[0] as usize >= self.target.dim() {
                return Err(Error::malformed("family output letter out of range"));
            }
            let found = m.degree(&self.target);
            if found != expected {
                return Err(Error::DegreeMismatch {
                    key: input.display(&self.source),
                    expected,
                    found,
                });
            }
        }
        self.add_unchecked(input, output);
        Ok(())
    }

    /// Same as [`add`](Self::add) when the caller already knows the output is
    /// linear and of the right degree.
    pub(crate) fn add_unchecked(&mut self, input: Monomial, output: &SymElement) {
        if output.is_zero() {
            return;
        }
        let slot = self.terms.entry(input.clone()).or_default();
        *slot += output;
        if slot.is_zero() {
            self.terms.remove(&input);
        }
    }

    pub fn add_term(&mut self, input: Monomial, letter: usize, c: Scalar) -> Result<()> {
        self.add(input, &SymElement::monomial(Monomial::letter(letter), c))
    }

    /// Value on an arbitrary element (extended linearly).
    pub fn eval(&self, x: &SymElement) -> SymElement {
        let mut out = SymElement::zero();
        for (m, c) in x.iter() {
            if let Some(v) = self.terms.get(m) {
                out.add_scaled(v, c);
            }
        }
        out
    }

    pub fn eval_monomial(&self, m: &Monomial) -> SymElement {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// `self += c·other`. A zero family adopts the other's degree.
    pub fn add_scaled(&mut self, other: &LinearFamily, c: &Scalar) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::malformed("adding families over different spaces"));
        }
        if other.is_zero() {
            return Ok(());
        }
        if self.is_zero() {
            self.degree = other.degree;
        } else if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                key: "family sum".into(),
                expected: self.degree,
                found: other.degree,
            });
        }
        for (m, v) in &other.terms {
            self.add_unchecked(m.clone(), &v.scaled(c));
        }
        Ok(())
    }

    pub fn scaled(&self, c: &Scalar) -> LinearFamily {
        let mut out = LinearFamily::new(self.source.clone(), self.target.clone(), self.degree);
        for (m, v) in &self.terms {
            out.add_unchecked(m.clone(), &v.scaled(c));
        }
        out
    }

    /// Keeps only the inputs satisfying `keep`.
    pub fn restricted(&self, mut keep: impl FnMut(&Monomial) -> bool) -> LinearFamily {
        let mut out = LinearFamily::new(self.source.clone(), self.target.clone(), self.degree);
        for (m, v) in &self.terms {
            if keep(m) {
                out.terms.insert(m.clone(), v.clone());
            }
        }
        out
    }

    /// The arity-`k` component.
    pub fn component(&self, k: usize) -> LinearFamily {
        self.restricted(|m| m.weight() == k)
    }

    pub fn truncated(&self, max_weight: usize) -> LinearFamily {
        self.restricted(|m| m.weight() <= max_weight)
    }

    /// Same terms over different (but compatible) spaces.
    pub(crate) fn with_spaces(&self, source: Arc<GradedSpace>, target: Arc<GradedSpace>) -> Self {
        LinearFamily {
            source,
            target,
            degree: self.degree,
            terms: self.terms.clone(),
        }
    }

    /// Builds a family by evaluating `f` on every given input; `f` must return
    /// linear elements of the right degree.
    pub(crate) fn tabulate(
        source: Arc<GradedSpace>,
        target: Arc<GradedSpace>,
        degree: i32,
        inputs: impl IntoIterator<Item = Monomial>,
        mut f: impl FnMut(&Monomial) -> SymElement,
    ) -> LinearFamily {
        let mut out = LinearFamily::new(source, target, degree);
        for m in inputs {
            let v = f(&m);
            out.add_unchecked(m, &v);
        }
        out
    }

    /// The first input (canonical order) where the two families differ.
    pub fn first_difference(&self, other: &LinearFamily) -> Option<(Monomial, SymElement, SymElement)> {
        let mut keys: Vec<&Monomial> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|m| {
            let a = self.eval_monomial(m);
            let b = other.eval_monomial(m);
            (a != b).then(|| (m.clone(), a, b))
        })
    }

    pub fn display(&self) -> String {
        let mut lines = Vec::new();
        for (m, v) in &self.terms {
            lines.push(format!(
                "{} ↦ {}",
                m.display(&self.source),
                v.display(&self.target)
            ));
        }
        lines.join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::int;

    #[test]
    fn degree_is_enforced() {
        let e = Arc::new(GradedSpace::new([("e", -1), ("f", -1)]).unwrap());
        let mut l = LinearFamily::endo(e.clone(), 1);
        let ef = Monomial::from_letters(&e, &[0, 1]).unwrap();
        l.add_term(ef.clone(), 0, int(-1)).unwrap();
        assert!(l.add_term(Monomial::letter(0), 1, int(1)).is_err());
        assert_eq!(l.eval_monomial(&ef).display(&e), "-e");
        l.add_term(ef, 0, int(1)).unwrap();
        assert!(l.is_zero());
    }
}
