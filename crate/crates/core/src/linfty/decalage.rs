//! Skew-symmetric brackets on `E` and the symmetric brackets they correspond
//! to on `E[1]`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{odd, sign, GradedSpace, Scalar};
use crate::sym::{LinearFamily, Letter, Monomial, SymElement};

/// Brackets `l'_k` of degree `2-k` on the unshifted space, stored on sorted
/// letter words. Swapping adjacent entries of degrees `a, b` multiplies by
/// `-(-1)^{ab}`, so a repeated even letter vanishes.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewBrackets {
    space: Arc<GradedSpace>,
    terms: BTreeMap<Vec<Letter>, SymElement>,
}

impl SkewBrackets {
    pub fn new(space: Arc<GradedSpace>) -> Self {
        SkewBrackets {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Letter>, &SymElement)> {
        self.terms.iter()
    }

    /// Sets `l'(word) += c·out`, the word in any order.
    pub fn add(&mut self, word: &[usize], out: usize, c: Scalar) -> Result<()> {
        let k = word.len() as i32;
        if word.is_empty() {
            return Err(Error::malformed("empty bracket input"));
        }
        let expected: i32 = word.iter().map(|&l| self.space.degree(l)).sum::<i32>() + 2 - k;
        let found = self.space.degree(out);
        if found != expected {
            return Err(Error::DegreeMismatch {
                key: word.iter().map(|&l| self.space.name(l)).collect::<Vec<_>>().join(","),
                expected,
                found,
            });
        }
        let letters: Vec<Letter> = word.iter().map(|&l| l as Letter).collect();
        let Some((key, neg)) = skew_normalize(&self.space, &letters) else {
            return Ok(());
        };
        let slot = self.terms.entry(key.clone()).or_default();
        slot.add_term(Monomial::letter(out), if neg { -c } else { c });
        if slot.is_zero() {
            self.terms.remove(&key);
        }
        Ok(())
    }

    /// `l'(x_1,…,x_k)` for a word in any order.
    pub fn eval_word(&self, word: &[Letter]) -> SymElement {
        match skew_normalize(&self.space, word) {
            Some((key, neg)) => self
                .terms
                .get(&key)
                .map(|v| v.scaled(&sign(neg)))
                .unwrap_or_default(),
            None => SymElement::zero(),
        }
    }

    /// Extends a bracket linearly in each slot.
    pub fn eval_args(&self, args: &[&SymElement]) -> SymElement {
        let mut out = SymElement::zero();
        let mut word = Vec::with_capacity(args.len());
        let mut coeff = Vec::with_capacity(args.len());
        expand(self, args, &mut word, &mut coeff, &mut out);
        out
    }
}

fn expand(
    s: &SkewBrackets,
    args: &[&SymElement],
    word: &mut Vec<Letter>,
    coeff: &mut Vec<Scalar>,
    out: &mut SymElement,
) {
    let Some((first, rest)) = args.split_first() else {
        let c: Scalar = coeff.iter().product();
        out.add_scaled(&s.eval_word(word), &c);
        return;
    };
    for (m, c) in first.iter() {
        debug_assert_eq!(m.weight(), 1);
        word.push(m.letters()[0]);
        coeff.push(c.clone());
        expand(s, rest, word, coeff, out);
        word.pop();
        coeff.pop();
    }
}

/// Sorts a word under the skew rule. `None` when an even letter repeats.
pub(crate) fn skew_normalize(space: &GradedSpace, word: &[Letter]) -> Option<(Vec<Letter>, bool)> {
    let mut v = word.to_vec();
    let mut neg = false;
    for i in 1..v.len() {
        let x = v[i];
        let mut j = i;
        while j > 0 && v[j - 1] > x {
            // -(-1)^{ab}: a sign change unless both are odd
            if !(odd(space.degree(x as usize)) && odd(space.degree(v[j - 1] as usize))) {
                neg = !neg;
            }
            v[j] = v[j - 1];
            j -= 1;
        }
        v[j] = x;
    }
    if v.windows(2)
        .any(|w| w[0] == w[1] && !odd(space.degree(w[0] as usize)))
    {
        return None;
    }
    Some((v, neg))
}

/// `(-1)^{(k-1)|x_1| + (k-2)|x_2| + … + |x_{k-1}|}` with degrees in `E[1]`.
fn decalage_sign(shifted: &GradedSpace, word: &[Letter]) -> bool {
    let k = word.len();
    word.iter()
        .enumerate()
        .fold(false, |acc, (i, &l)| {
            acc ^ (odd(shifted.degree(l as usize)) && (k - 1 - i) % 2 == 1)
        })
}

/// Symmetric degree +1 brackets on `E[1]` from skew brackets on `E`.
pub fn decalage(skew: &SkewBrackets) -> Result<LinearFamily> {
    let shifted = Arc::new(skew.space.shift(1));
    let mut out = LinearFamily::endo(shifted.clone(), 1);
    for (word, value) in &skew.terms {
        let key = Monomial::from_letters(
            &shifted,
            &word.iter().map(|&l| l as usize).collect::<Vec<_>>(),
        )
        .ok_or_else(|| Error::malformed("skew word with repeated even letter"))?;
        let neg = decalage_sign(&shifted, word);
        out.add(key, &value.scaled(&sign(neg)))?;
    }
    Ok(out)
}

/// Inverse of [`decalage`]: `l` lives on `E[1]`, the result on `E`.
pub fn inverse_decalage(l: &LinearFamily) -> Result<SkewBrackets> {
    if !l.is_endo() {
        return Err(Error::malformed("décalage needs endomorphism brackets"));
    }
    let shifted = l.source().clone();
    let mut out = SkewBrackets::new(Arc::new(shifted.shift(-1)));
    for (m, value) in l.terms() {
        let neg = decalage_sign(&shifted, m.letters());
        let word: Vec<usize> = m.letters().iter().map(|&x| x as usize).collect();
        for (o, c) in value.iter() {
            let c = if neg { -c.clone() } else { c.clone() };
            out.add(&word, o.letters()[0] as usize, c)?;
        }
    }
    Ok(out)
}

/// Defects of the skew DGLA identities for brackets of arity ≤ 2: `d²`, the
/// Leibniz rule and graded Jacobi in the usual skew form. Returns the first
/// offending word of letters, if any.
pub fn skew_dgla_defect(skew: &SkewBrackets) -> Result<Option<(Vec<usize>, SymElement)>> {
    let s = &skew.space;
    if skew.terms.keys().any(|w| w.len() > 2) {
        return Err(Error::Refused(
            "the skew identity oracle only covers brackets of arity 1 and 2".into(),
        ));
    }
    let d = |x: &SymElement| {
        let mut out = SymElement::zero();
        for (m, c) in x.iter() {
            out.add_scaled(&skew.eval_word(m.letters()), c);
        }
        out
    };
    let br = |x: &SymElement, y: &SymElement| skew.eval_args(&[x, y]);
    let deg = |l: usize| s.degree(l);
    let n = s.dim();
    for a in 0..n {
        let x = SymElement::letter(a);
        let dd = d(&d(&x));
        if !dd.is_zero() {
            return Ok(Some((vec![a], dd)));
        }
    }
    for a in 0..n {
        for b in 0..n {
            let (x, y) = (SymElement::letter(a), SymElement::letter(b));
            // d[x,y] = [dx,y] + (-1)^{|x|}[x,dy]
            let mut defect = d(&br(&x, &y));
            defect -= &br(&d(&x), &y);
            defect.add_scaled(&br(&x, &d(&y)), &-sign(odd(deg(a))));
            if !defect.is_zero() {
                return Ok(Some((vec![a, b], defect)));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (x, y, z) = (
                    SymElement::letter(a),
                    SymElement::letter(b),
                    SymElement::letter(c),
                );
                // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]]
                let mut defect = br(&x, &br(&y, &z));
                defect -= &br(&br(&x, &y), &z);
                defect.add_scaled(
                    &br(&y, &br(&x, &z)),
                    &-sign(odd(deg(a)) && odd(deg(b))),
                );
                if !defect.is_zero() {
                    return Ok(Some((vec![a, b, c], defect)));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{int, Bounds};
    use crate::linfty::check_jacobi;

    #[test]
    fn classical_bracket_becomes_minus_e() {
        let e = Arc::new(GradedSpace::new([("e", 0), ("f", 0)]).unwrap());
        let mut s = SkewBrackets::new(e);
        s.add(&[0, 1], 0, int(1)).unwrap();
        assert_eq!(s.eval_word(&[1, 0]).display(s.space()), "-e");
        let l = decalage(&s).unwrap();
        assert_eq!(l.display(), "e⊙f ↦ -e");
        assert_eq!(inverse_decalage(&l).unwrap(), s);
        assert!(skew_dgla_defect(&s).unwrap().is_none());
        assert!(check_jacobi(&l, Bounds::with_weight(4)).unwrap().pass);
    }

    #[test]
    fn differential_is_unchanged() {
        let e = Arc::new(GradedSpace::new([("a", 0), ("b", 1)]).unwrap());
        let mut s = SkewBrackets::new(e);
        s.add(&[0], 1, int(3)).unwrap();
        let l = decalage(&s).unwrap();
        assert_eq!(l.display(), "a ↦ 3 b");
    }
}
