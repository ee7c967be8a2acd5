use std::collections::BTreeMap;
use std::ops::{AddAssign, Neg, SubAssign};

use num_traits::{One, Zero};

use crate::graded::{format_scalar, is_negative, GradedSpace, Scalar};
use crate::sym::monomial::{multiply, normalize, Letter, Monomial};

/// A finite sum of canonical monomials with nonzero rational coefficients.
///
/// The empty monomial is allowed internally as the unit of `S(E)`; nothing in
/// the public API produces it except products with it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymElement {
    terms: BTreeMap<Monomial, Scalar>,
}

impl SymElement {
    pub fn zero() -> Self {
        SymElement::default()
    }

    pub(crate) fn unit() -> Self {
        SymElement::monomial(Monomial::default(), Scalar::one())
    }

    pub fn letter(l: usize) -> Self {
        SymElement::monomial(Monomial::letter(l), Scalar::one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut e = SymElement::zero();
        e.add_term(m, c);
        e
    }

    /// `ε·(sorted word)` or zero; the word may be in any order.
    pub fn from_word(space: &GradedSpace, word: &[Letter]) -> Self {
        match normalize(space, word) {
            Some((m, neg)) => SymElement::monomial(m, crate::graded::sign(neg)),
            None => SymElement::zero(),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn add_signed(&mut self, m: Monomial, c: &Scalar, negative: bool) {
        if negative {
            self.add_term(m, -c.clone());
        } else {
            self.add_term(m, c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &SymElement, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> SymElement {
        if c.is_zero() {
            return SymElement::zero();
        }
        SymElement {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
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

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn weight_component(&self, w: usize) -> SymElement {
        SymElement {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() == w)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops every term of weight above `max_weight`.
    pub fn truncated(&self, max_weight: usize) -> SymElement {
        SymElement {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() <= max_weight)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Projection onto weight one.
    pub fn linear_part(&self) -> SymElement {
        self.weight_component(1)
    }

    pub fn max_weight(&self) -> usize {
        self.terms.keys().map(Monomial::weight).max().unwrap_or(0)
    }

    /// The common degree of all terms, if there is one.
    pub fn homogeneous_degree(&self, space: &GradedSpace) -> Option<i32> {
        let mut degs = self.terms.keys().map(|m| m.degree(space));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// `self ⊙ other`.
    pub fn mul(&self, other: &SymElement, space: &GradedSpace) -> SymElement {
        let mut out = SymElement::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((m, neg)) = multiply(space, a, b) {
                    out.add_signed(m, &(ca * cb), neg);
                }
            }
        }
        out
    }

    pub fn display(&self, space: &GradedSpace) -> String {
        display_terms(self.terms.iter().map(|(m, c)| (m.display(space), c)))
    }
}

pub(crate) fn display_terms<'a>(terms: impl Iterator<Item = (String, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (i, (word, c)) in terms.enumerate() {
        let neg = is_negative(c);
        let abs = if neg { -c.clone() } else { c.clone() };
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if word.is_empty() {
            out.push_str(&format_scalar(&abs));
        } else if abs.is_one() {
            out.push_str(&word);
        } else {
            out.push_str(&format_scalar(&abs));
            out.push(' ');
            out.push_str(&word);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl AddAssign<&SymElement> for SymElement {
    fn add_assign(&mut self, rhs: &SymElement) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&SymElement> for SymElement {
    fn sub_assign(&mut self, rhs: &SymElement) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Neg for SymElement {
    type Output = SymElement;
    fn neg(self) -> SymElement {
        SymElement {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl FromIterator<(Monomial, Scalar)> for SymElement {
    fn from_iter<I: IntoIterator<Item = (Monomial, Scalar)>>(iter: I) -> Self {
        let mut e = SymElement::zero();
        for (m, c) in iter {
            e.add_term(m, c);
        }
        e
    }
}

/// A finite sum of tensor words `a_1 ⊗ … ⊗ a_r` of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor {
    terms: BTreeMap<Vec<Monomial>, Scalar>,
}

impl Tensor {
    pub fn zero() -> Self {
        Tensor::default()
    }

    pub fn add_term(&mut self, word: Vec<Monomial>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
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

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Monomial>, &Scalar)> {
        self.terms.iter()
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    /// Applies a linear map to factor `slot`. `map` returns the image of a
    /// monomial and the Koszul parity of passing the map across the factors
    /// before `slot` is supplied by `sign`.
    pub fn map_factor(
        &self,
        slot: usize,
        mut map: impl FnMut(&Monomial) -> SymElement,
        mut sign: impl FnMut(&[Monomial]) -> bool,
    ) -> Tensor {
        let mut out = Tensor::zero();
        for (word, c) in &self.terms {
            let image = map(&word[slot]);
            let neg = sign(&word[..slot]);
            for (m, a) in image.iter() {
                if m.is_empty() {
                    continue;
                }
                let mut w = word.clone();
                w[slot] = m.clone();
                let coeff = a * c;
                out.add_term(w, if neg { -coeff } else { coeff });
            }
        }
        out
    }

    /// Replaces factor `slot` by its reduced coproduct, splitting it in two.
    pub fn split_factor(&self, space: &GradedSpace, slot: usize) -> Tensor {
        let mut out = Tensor::zero();
        for (word, c) in &self.terms {
            for (a, b, neg) in crate::sym::coalgebra::coproduct_terms(space, &word[slot]) {
                let mut w = Vec::with_capacity(word.len() + 1);
                w.extend_from_slice(&word[..slot]);
                w.push(a);
                w.push(b);
                w.extend_from_slice(&word[slot + 1..]);
                out.add_term(w, if neg { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    pub fn display(&self, space: &GradedSpace) -> String {
        display_terms(self.terms.iter().map(|(w, c)| {
            let parts: Vec<String> = w.iter().map(|m| m.display(space)).collect();
            (parts.join(" ⊗ "), c)
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{int, ratio};

    #[test]
    fn display_and_arithmetic() {
        let s = GradedSpace::new([("e", -1), ("f", -1), ("g", 2)]).unwrap();
        let mut x = SymElement::from_word(&s, &[1, 0]);
        assert_eq!(x.display(&s), "-e⊙f");
        x.add_scaled(&SymElement::letter(2), &ratio(1, 2));
        assert_eq!(x.display(&s), "1/2 g - e⊙f");
        let mut y = x.clone();
        y -= &x;
        assert!(y.is_zero());
        assert_eq!(SymElement::zero().display(&s), "0");
        let ef = SymElement::letter(0).mul(&SymElement::letter(1), &s);
        let fe = SymElement::letter(1).mul(&SymElement::letter(0), &s);
        assert_eq!(ef, fe.scaled(&int(-1)));
        assert!(SymElement::letter(0).mul(&SymElement::letter(0), &s).is_zero());
    }
}
