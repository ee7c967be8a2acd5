use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub degree: i32,
}

/// A finite-dimensional graded vector space presented by an ordered basis of
/// homogeneous elements. The basis order is the canonical letter order used
/// by every symmetric word over this space.
#[derive(Clone, Debug)]
pub struct GradedSpace {
    basis: Vec<BasisElement>,
    lookup: HashMap<String, usize>,
    range: (i32, i32),
}

impl PartialEq for GradedSpace {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl Eq for GradedSpace {}

impl GradedSpace {
    pub fn new<S: Into<String>>(basis: impl IntoIterator<Item = (S, i32)>) -> Result<Self> {
        let basis: Vec<BasisElement> = basis
            .into_iter()
            .map(|(name, degree)| BasisElement {
                name: name.into(),
                degree,
            })
            .collect();
        let range = match (
            basis.iter().map(|b| b.degree).min(),
            basis.iter().map(|b| b.degree).max(),
        ) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => (0, 0),
        };
        Self::with_range(basis, range)
    }

    /// Builds a space whose degrees must all lie in `range` (inclusive).
    pub fn with_range(basis: Vec<BasisElement>, range: (i32, i32)) -> Result<Self> {
        if basis.len() > u16::MAX as usize {
            return Err(Error::malformed("basis too large"));
        }
        let mut lookup = HashMap::with_capacity(basis.len());
        for (i, b) in basis.iter().enumerate() {
            if b.name.is_empty() {
                return Err(Error::malformed("empty basis name"));
            }
            if lookup.insert(b.name.clone(), i).is_some() {
                return Err(Error::malformed(format!("duplicate basis name `{}`", b.name)));
            }
            if b.degree < range.0 || b.degree > range.1 {
                return Err(Error::DegreeMismatch {
                    key: b.name.clone(),
                    expected: range.0,
                    found: b.degree,
                });
            }
        }
        Ok(GradedSpace {
            basis,
            lookup,
            range,
        })
    }

    pub fn empty() -> Self {
        GradedSpace {
            basis: Vec::new(),
            lookup: HashMap::new(),
            range: (0, 0),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, letter: usize) -> i32 {
        self.basis[letter].degree
    }

    pub fn name(&self, letter: usize) -> &str {
        &self.basis[letter].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    pub fn range(&self) -> (i32, i32) {
        self.range
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.basis.iter().map(|b| b.degree).collect()
    }

    /// Dimension of the degree-`d` component.
    pub fn dim_in_degree(&self, d: i32) -> usize {
        self.basis.iter().filter(|b| b.degree == d).count()
    }

    /// `E[k]`, with `E[k]_i = E_{i+k}`: an element of degree `d` in `E` has
    /// degree `d - k` in `E[k]`.
    pub fn shift(&self, k: i32) -> GradedSpace {
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElement {
                name: b.name.clone(),
                degree: b.degree - k,
            })
            .collect();
        GradedSpace {
            basis,
            lookup: self.lookup.clone(),
            range: (self.range.0 - k, self.range.1 - k),
        }
    }

    /// `E*` with `(E*)_i = (E_{-i})*`. Names get a `*` suffix; dualizing a
    /// starred name strips it again so that `dual(dual(E)) == E`.
    pub fn dual(&self) -> GradedSpace {
        let basis: Vec<BasisElement> = self
            .basis
            .iter()
            .map(|b| BasisElement {
                name: dual_name(&b.name),
                degree: -b.degree,
            })
            .collect();
        let lookup = basis
            .iter()
            .enumerate()
            .map(|(i, b)| (b.name.clone(), i))
            .collect();
        GradedSpace {
            basis,
            lookup,
            range: (-self.range.1, -self.range.0),
        }
    }

    /// Concatenated basis: all of `self`, then all of `other`. Names of
    /// `other` that collide with `self` get primes appended until unique.
    pub fn direct_sum(&self, other: &GradedSpace) -> GradedSpace {
        let mut basis = self.basis.clone();
        let mut lookup = self.lookup.clone();
        for b in &other.basis {
            let mut name = b.name.clone();
            while lookup.contains_key(&name) {
                name.push('\'');
            }
            lookup.insert(name.clone(), basis.len());
            basis.push(BasisElement {
                name,
                degree: b.degree,
            });
        }
        let range = (
            self.range.0.min(other.range.0),
            self.range.1.max(other.range.1),
        );
        let range = match (self.is_empty(), other.is_empty()) {
            (true, _) => other.range,
            (_, true) => self.range,
            _ => range,
        };
        GradedSpace {
            basis,
            lookup,
            range,
        }
    }
}

fn dual_name(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{name}*"),
    }
}

impl fmt::Display for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", b.name, b.degree)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(items: &[(&str, i32)]) -> GradedSpace {
        GradedSpace::new(items.iter().map(|&(n, d)| (n, d))).unwrap()
    }

    #[test]
    fn shift_examples() {
        let e = space(&[("e", -1)]);
        assert_eq!(e.shift(-1), space(&[("e", 0)]));
        let s = space(&[("e", -1), ("f", 0)]);
        assert_eq!(s.shift(0), s);
        assert_eq!(s.shift(1), space(&[("e", -2), ("f", -1)]));
        assert_eq!(s.shift(3).shift(-3), s);
    }

    #[test]
    fn dual_examples() {
        assert_eq!(space(&[("e", -1)]).dual(), space(&[("e*", 1)]));
        assert_eq!(GradedSpace::empty().dual(), GradedSpace::empty());
        let s = space(&[("e", -1), ("f", 0), ("g", 2)]);
        assert_eq!(s.dual(), space(&[("e*", 1), ("f*", 0), ("g*", -2)]));
        assert_eq!(s.dual().dual(), s);
    }

    #[test]
    fn rejects_duplicates_and_out_of_range() {
        assert!(GradedSpace::new([("e", 0), ("e", 1)]).is_err());
        let b = vec![BasisElement {
            name: "e".into(),
            degree: 4,
        }];
        assert!(GradedSpace::with_range(b, (-3, 3)).is_err());
    }

    #[test]
    fn direct_sum_primes_collisions() {
        let e = space(&[("e", -1), ("f", -1)]);
        let s = e.direct_sum(&e);
        let names: Vec<_> = s.basis().iter().map(|b| b.name.as_str()).collect();
        assert_eq!(names, ["e", "f", "e'", "f'"]);
        assert_eq!(s.index_of("f'"), Some(3));
    }
}
