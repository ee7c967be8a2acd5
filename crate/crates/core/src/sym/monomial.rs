use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::graded::{odd, GradedSpace};

/// Index of a basis element in its space.
pub type Letter = u16;

/// A canonical word `x_{i_1}⊙…⊙x_{i_n}` with `i_1 ≤ … ≤ i_n` and no repeated
/// odd letter. Ordered by weight first, then lexicographically, which is the
/// order witnesses are reported in.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(SmallVec<[Letter; 8]>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn letter(l: usize) -> Self {
        let mut v = SmallVec::new();
        v.push(l as Letter);
        Monomial(v)
    }

    /// Trusts the caller that `letters` is already canonical.
    pub(crate) fn from_sorted(letters: impl IntoIterator<Item = Letter>) -> Self {
        let m = Monomial(letters.into_iter().collect());
        debug_assert!(m.0.windows(2).all(|w| w[0] <= w[1]));
        m
    }

    /// Canonical monomial from a multiset of letters, checking that it is
    /// nonzero. Returns `None` for a repeated odd letter.
    pub fn from_letters(space: &GradedSpace, letters: &[usize]) -> Option<Self> {
        let word: Vec<Letter> = letters.iter().map(|&l| l as Letter).collect();
        normalize(space, &word).map(|(m, _)| m)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self, space: &GradedSpace) -> i32 {
        self.0.iter().map(|&l| space.degree(l as usize)).sum()
    }

    pub fn degrees(&self, space: &GradedSpace) -> SmallVec<[i32; 8]> {
        self.0.iter().map(|&l| space.degree(l as usize)).collect()
    }

    /// Sub-word at the positions set in `mask`; order is preserved so the
    /// result is canonical.
    pub(crate) fn select(&self, mask: u32) -> Monomial {
        Monomial(
            self.0
                .iter()
                .enumerate()
                .filter(|(p, _)| mask & (1 << p) != 0)
                .map(|(_, &l)| l)
                .collect(),
        )
    }

    /// Adds `offset` to every letter (embedding into a direct sum).
    pub(crate) fn shifted(&self, offset: usize) -> Monomial {
        Monomial(self.0.iter().map(|&l| l + offset as Letter).collect())
    }

    /// Concatenation where every letter of `self` precedes every letter of
    /// `tail`; no reordering (and so no sign) is needed.
    pub(crate) fn concat_ordered(&self, tail: &Monomial) -> Monomial {
        debug_assert!(match (self.0.last(), tail.0.first()) {
            (Some(a), Some(b)) => a <= b,
            _ => true,
        });
        let mut v = self.0.clone();
        v.extend_from_slice(&tail.0);
        Monomial(v)
    }

    pub fn display(&self, space: &GradedSpace) -> String {
        let names: Vec<&str> = self.0.iter().map(|&l| space.name(l as usize)).collect();
        names.join("⊙")
    }

    /// Parses `"e⊙f"` or `"e*f"`-free forms: a list of names.
    pub fn parse_names(space: &GradedSpace, names: &[&str]) -> Result<(Monomial, bool)> {
        let mut word = Vec::with_capacity(names.len());
        for n in names {
            let l = space
                .index_of(n)
                .ok_or_else(|| Error::Unresolved(n.to_string()))?;
            word.push(l as Letter);
        }
        normalize(space, &word).ok_or_else(|| {
            Error::malformed(format!("word {names:?} vanishes (repeated odd element)"))
        })
    }
}

/// Sorts `word` into canonical order. Returns the monomial and whether the
/// Koszul sign of the reordering is negative, or `None` when the word
/// contains an odd letter twice.
pub fn normalize(space: &GradedSpace, word: &[Letter]) -> Option<(Monomial, bool)> {
    let mut v: SmallVec<[Letter; 8]> = SmallVec::from_slice(word);
    let mut negative = false;
    for i in 1..v.len() {
        let x = v[i];
        let xo = odd(space.degree(x as usize));
        let mut j = i;
        while j > 0 && v[j - 1] > x {
            if xo && odd(space.degree(v[j - 1] as usize)) {
                negative = !negative;
            }
            v[j] = v[j - 1];
            j -= 1;
        }
        v[j] = x;
    }
    for w in v.windows(2) {
        if w[0] == w[1] && odd(space.degree(w[0] as usize)) {
            return None;
        }
    }
    Some((Monomial(v), negative))
}

/// `a ⊙ b` for canonical monomials.
pub fn multiply(space: &GradedSpace, a: &Monomial, b: &Monomial) -> Option<(Monomial, bool)> {
    let mut out: SmallVec<[Letter; 8]> = SmallVec::with_capacity(a.0.len() + b.0.len());
    let mut negative = false;
    // odd letters of `a` not yet emitted
    let mut odd_left_in_a = a.0.iter().filter(|&&l| odd(space.degree(l as usize))).count();
    let (mut i, mut j) = (0, 0);
    while i < a.0.len() || j < b.0.len() {
        let take_a = j == b.0.len() || (i < a.0.len() && a.0[i] <= b.0[j]);
        if take_a {
            let l = a.0[i];
            if odd(space.degree(l as usize)) {
                odd_left_in_a -= 1;
            }
            out.push(l);
            i += 1;
        } else {
            let l = b.0[j];
            if odd(space.degree(l as usize)) {
                if i < a.0.len() && a.0[i] == l {
                    return None;
                }
                if odd_left_in_a % 2 == 1 {
                    negative = !negative;
                }
            }
            out.push(l);
            j += 1;
        }
    }
    for w in out.windows(2) {
        if w[0] == w[1] && odd(space.degree(w[0] as usize)) {
            return None;
        }
    }
    Some((Monomial(out), negative))
}

/// Every nonzero canonical monomial of weight `1..=max_weight`, in canonical
/// order.
pub fn monomials_up_to(space: &GradedSpace, max_weight: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for w in 1..=max_weight {
        out.extend(monomials_of_weight(space, w));
    }
    out
}

pub fn monomials_of_weight(space: &GradedSpace, weight: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut word: SmallVec<[Letter; 8]> = SmallVec::new();
    fill(space, weight, 0, &mut word, &mut out);
    out
}

fn fill(
    space: &GradedSpace,
    remaining: usize,
    start: usize,
    word: &mut SmallVec<[Letter; 8]>,
    out: &mut Vec<Monomial>,
) {
    if remaining == 0 {
        out.push(Monomial(word.clone()));
        return;
    }
    for l in start..space.dim() {
        let next = if odd(space.degree(l)) { l + 1 } else { l };
        word.push(l as Letter);
        fill(space, remaining - 1, next, word, out);
        word.pop();
    }
}
