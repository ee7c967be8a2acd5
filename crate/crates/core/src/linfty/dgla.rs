//! Symmetric DGLAs used as morphism targets: `End(V)[1]` for a complex and
//! `Coder(S̄(V))[1]` for a Lie ∞-algebra.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graded::{odd, sign, GradedSpace, Scalar};
use crate::linfty::LieInfty;
use crate::sym::{display_terms, rn_bracket, LinearFamily, Monomial, SymElement};

/// A symmetric DGLA `(𝔤, ∂, ⟦·,·⟧)`. Degrees passed in are degrees in `𝔤`
/// (the shifted grading); elements do not need to carry them.
pub trait SymmetricDgla {
    type Elem: Clone + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn add_scaled(&self, acc: &mut Self::Elem, x: &Self::Elem, c: &Scalar);
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn differential(&self, x: &Self::Elem, degree: i32) -> Self::Elem;
    fn bracket(&self, x: &Self::Elem, dx: i32, y: &Self::Elem, dy: i32) -> Self::Elem;
    fn display(&self, x: &Self::Elem) -> String;
}

/// A linear endomorphism of `V` as a sparse matrix: `(row, col) ↦ c` means
/// `v_col ↦ c·v_row`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matrix {
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl Matrix {
    pub fn zero() -> Self {
        Matrix::default()
    }

    pub fn from_family(f: &LinearFamily) -> Result<Self> {
        let mut m = Matrix::zero();
        for (input, value) in f.terms() {
            if input.weight() != 1 {
                return Err(Error::malformed("a matrix needs a linear family"));
            }
            let col = input.letters()[0] as usize;
            for (o, c) in value.iter() {
                m.add(o.letters()[0] as usize, col, c.clone());
            }
        }
        Ok(m)
    }

    pub fn add(&mut self, row: usize, col: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry((row, col)).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.entries.remove(&(row, col));
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Scalar {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_scaled(&mut self, other: &Matrix, c: &Scalar) {
        for (&(r, k), a) in &other.entries {
            self.add(r, k, a * c);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Matrix {
        let mut m = Matrix::zero();
        m.add_scaled(self, c);
        m
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zero();
        for (&(k, c), b) in &other.entries {
            for (&(r, k2), a) in self.entries.range((0, 0)..) {
                if k2 == k {
                    out.add(r, c, a * b);
                }
            }
        }
        out
    }

    /// Applies the matrix to a linear element.
    pub fn apply(&self, v: &SymElement) -> SymElement {
        let mut out = SymElement::zero();
        for (m, c) in v.iter() {
            let col = m.letters()[0] as usize;
            for (&(r, k), a) in &self.entries {
                if k == col {
                    out.add_term(Monomial::letter(r), a * c);
                }
            }
        }
        out
    }

    pub fn display(&self, space: &GradedSpace) -> String {
        display_terms(
            self.entries
                .iter()
                .map(|(&(r, k), c)| (format!("{}|{}", space.name(r), space.name(k)), c)),
        )
    }
}

/// `End(V)[1]` for a complex `(V, d)`:
/// `∂φ = -d∘φ + (-1)^{|φ|+1} φ∘d` and
/// `⟦φ,ψ⟧ = (-1)^{|φ|+1}(φ∘ψ - (-1)^{(|φ|+1)(|ψ|+1)} ψ∘φ)`,
/// `|φ|` the degree in `End(V)[1]`.
#[derive(Clone, Debug)]
pub struct EndDgla {
    space: Arc<GradedSpace>,
    d: Matrix,
}

impl EndDgla {
    pub fn new(space: Arc<GradedSpace>, d: &LinearFamily) -> Result<Self> {
        if !d.is_zero() && (d.degree() != 1 || d.max_arity() != 1) {
            return Err(Error::malformed("a differential is a linear map of degree +1"));
        }
        let dm = Matrix::from_family(d)?;
        let dd = dm.compose(&dm);
        if !dd.is_zero() {
            return Err(Error::InvalidComplex(dd.display(&space)));
        }
        Ok(EndDgla { space, d: dm })
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }
}

impl SymmetricDgla for EndDgla {
    type Elem = Matrix;

    fn zero(&self) -> Matrix {
        Matrix::zero()
    }

    fn add_scaled(&self, acc: &mut Matrix, x: &Matrix, c: &Scalar) {
        acc.add_scaled(x, c);
    }

    fn is_zero(&self, x: &Matrix) -> bool {
        x.is_zero()
    }

    fn differential(&self, x: &Matrix, degree: i32) -> Matrix {
        let mut out = self.d.compose(x).scaled(&-sign(false));
        out.add_scaled(&x.compose(&self.d), &sign(odd(degree + 1)));
        out
    }

    fn bracket(&self, x: &Matrix, dx: i32, y: &Matrix, dy: i32) -> Matrix {
        let mut out = x.compose(y);
        out.add_scaled(&y.compose(x), &-sign(odd(dx + 1) && odd(dy + 1)));
        out.scaled(&sign(odd(dx + 1)))
    }

    fn display(&self, x: &Matrix) -> String {
        x.display(&self.space)
    }
}

/// The basis `{t|s}` of `End(V)[1]`, `t|s : v_s ↦ v_t`, in degree
/// `|v_t| - |v_s| - 1`, ordered by `(t, s)`.
pub fn end_space(v: &GradedSpace) -> GradedSpace {
    let mut basis = Vec::with_capacity(v.dim() * v.dim());
    for t in 0..v.dim() {
        for s in 0..v.dim() {
            basis.push((
                format!("{}|{}", v.name(t), v.name(s)),
                v.degree(t) - v.degree(s) - 1,
            ));
        }
    }
    GradedSpace::new(basis).expect("distinct names")
}

fn unit_matrix(dim: usize, letter: usize) -> Matrix {
    let mut m = Matrix::zero();
    m.add(letter / dim, letter % dim, Scalar::from_integer(1.into()));
    m
}

/// Coordinates of a matrix in the `{t|s}` basis.
pub fn matrix_to_element(m: &Matrix, dim: usize) -> SymElement {
    m.entries()
        .map(|(&(r, c), a)| (Monomial::letter(r * dim + c), a.clone()))
        .collect()
}

/// The symmetric DGLA `End(V)[1]` of a complex, presented by structure
/// constants `l₁ = ∂`, `l₂ = ⟦·,·⟧` on the `{t|s}` basis.
pub fn endo_dgla(v: &Arc<GradedSpace>, d: &LinearFamily) -> Result<LieInfty> {
    let dgla = EndDgla::new(v.clone(), d)?;
    let end = Arc::new(end_space(v));
    let n = v.dim();
    let mut l = LinearFamily::endo(end.clone(), 1);
    for a in 0..end.dim() {
        let ma = unit_matrix(n, a);
        let da = end.degree(a);
        l.add(Monomial::letter(a), &matrix_to_element(&dgla.differential(&ma, da), n))?;
        for b in a..end.dim() {
            let Some(key) = Monomial::from_letters(&end, &[a, b]) else {
                continue;
            };
            let mb = unit_matrix(n, b);
            let value = dgla.bracket(&ma, da, &mb, end.degree(b));
            l.add(key, &matrix_to_element(&value, n))?;
        }
    }
    LieInfty::new(l)
}

/// `Coder(S̄(V))[1]` for a Lie ∞-algebra `(V, M_V)`, elements given by their
/// generating families: `∂q = -[m, q]_RN`, `⟦q,p⟧ = (-1)^{deg q}[q,p]_RN`,
/// `deg q` the coderivation degree (one more than the degree in `𝔤`).
/// Families are tabulated up to `max_weight`.
#[derive(Clone, Debug)]
pub struct CoderDgla {
    m: LinearFamily,
    max_weight: usize,
}

impl CoderDgla {
    pub fn new(m: &LieInfty, max_weight: usize) -> Self {
        CoderDgla {
            m: m.brackets().clone(),
            max_weight,
        }
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        self.m.source()
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }
}

impl SymmetricDgla for CoderDgla {
    type Elem = LinearFamily;

    fn zero(&self) -> LinearFamily {
        LinearFamily::endo(self.m.source().clone(), 0)
    }

    fn add_scaled(&self, acc: &mut LinearFamily, x: &LinearFamily, c: &Scalar) {
        acc.add_scaled(x, c)
            .expect("coderivation families of one degree");
    }

    fn is_zero(&self, x: &LinearFamily) -> bool {
        x.is_zero()
    }

    fn differential(&self, x: &LinearFamily, _degree: i32) -> LinearFamily {
        rn_bracket(&self.m, x, self.max_weight)
            .expect("same space")
            .scaled(&-sign(false))
    }

    fn bracket(&self, x: &LinearFamily, dx: i32, y: &LinearFamily, _dy: i32) -> LinearFamily {
        rn_bracket(x, y, self.max_weight)
            .expect("same space")
            .scaled(&sign(odd(dx + 1)))
    }

    fn display(&self, x: &LinearFamily) -> String {
        x.display()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{int, Bounds};
    use crate::linfty::check_jacobi_two_path;

    fn complex() -> (Arc<GradedSpace>, LinearFamily) {
        let v = Arc::new(GradedSpace::new([("u", 0), ("w", 1)]).unwrap());
        let mut d = LinearFamily::endo(v.clone(), 1);
        d.add_term(Monomial::letter(0), 1, int(1)).unwrap();
        (v, d)
    }

    #[test]
    fn end_of_a_line_is_abelian() {
        let v = Arc::new(GradedSpace::new([("u", 0)]).unwrap());
        let l = endo_dgla(&v, &LinearFamily::endo(v.clone(), 1)).unwrap();
        assert_eq!(l.space().dim(), 1);
        assert!(l.brackets().is_zero());
    }

    #[test]
    fn two_dim_complex_gives_a_dgla() {
        let (v, d) = complex();
        let l = endo_dgla(&v, &d).unwrap();
        let verdict = check_jacobi_two_path(l.brackets(), Bounds::with_weight(4)).unwrap();
        assert!(verdict.pass, "{verdict}");
        // ∂² = 0 against the matrix formula
        let dgla = EndDgla::new(v.clone(), &d).unwrap();
        for a in 0..4 {
            let m = unit_matrix(2, a);
            let deg = l.space().degree(a);
            let dd = dgla.differential(&dgla.differential(&m, deg), deg + 1);
            assert!(dd.is_zero());
        }
    }

    #[test]
    fn non_complex_is_refused() {
        let v = Arc::new(GradedSpace::new([("u", 0), ("w", 1), ("z", 2)]).unwrap());
        let mut d = LinearFamily::endo(v.clone(), 1);
        d.add_term(Monomial::letter(0), 1, int(1)).unwrap();
        d.add_term(Monomial::letter(1), 2, int(1)).unwrap();
        assert!(matches!(endo_dgla(&v, &d), Err(Error::InvalidComplex(_))));
    }
}
