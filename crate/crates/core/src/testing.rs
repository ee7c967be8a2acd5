//! Fixtures shared by unit tests.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::actions::{Action, Representation};
use crate::graded::{int, GradedSpace};
use crate::linfty::{LieInfty, Matrix};
use crate::sym::{monomials_up_to, LinearFamily, Monomial, SymElement};

/// `{e, f}` at degree -1 with `l₂(e,f) = -e`.
pub fn fixture_a() -> LieInfty {
    let e = Arc::new(GradedSpace::new([("e", -1), ("f", -1)]).unwrap());
    let mut l = LinearFamily::endo(e.clone(), 1);
    l.add_term(Monomial::from_letters(&e, &[0, 1]).unwrap(), 0, int(-1))
        .unwrap();
    LieInfty::new(l).unwrap()
}

/// The action on `{u, w}` induced by `ρ(e) = [[0,a],[0,0]]`, `ρ(f) = diag(h, h+1)`.
pub fn module_action(a: i64, h: i64) -> Action {
    let l = fixture_a();
    let v = Arc::new(GradedSpace::new([("u", -1), ("w", -1)]).unwrap());
    let mut re = Matrix::zero();
    re.add(0, 1, int(-a));
    let mut rf = Matrix::zero();
    rf.add(0, 0, int(-h));
    rf.add(1, 1, int(-h - 1));
    let d = LinearFamily::endo(v.clone(), 1);
    Representation::from_matrices(&l, v, &d, [(Monomial::letter(0), re), (Monomial::letter(1), rf)])
        .unwrap()
        .to_action()
        .unwrap()
}

/// `c·id` as a family `S̄(E) → E`.
pub fn scalar_id(space: &Arc<GradedSpace>, c: i64) -> LinearFamily {
    let mut t = LinearFamily::endo(space.clone(), 0);
    for a in 0..space.dim() {
        t.add_term(Monomial::letter(a), a, int(c)).unwrap();
    }
    t
}

/// A family with small integer coefficients on inputs of weight
/// `≤ max_arity`; each admissible coefficient is nonzero with probability
/// `density`. Inputs are filtered by `keep`.
pub fn random_family(
    rng: &mut ChaCha8Rng,
    source: &Arc<GradedSpace>,
    target: &Arc<GradedSpace>,
    degree: i32,
    max_arity: usize,
    density: f64,
    mut keep: impl FnMut(&Monomial) -> bool,
) -> LinearFamily {
    let mut f = LinearFamily::new(source.clone(), target.clone(), degree);
    for m in monomials_up_to(source, max_arity) {
        if !keep(&m) {
            continue;
        }
        let want = m.degree(source) + degree;
        for o in 0..target.dim() {
            if target.degree(o) == want && rng.gen_bool(density) {
                let c = rng.gen_range(-2i64..=2);
                if c != 0 {
                    f.add(m.clone(), &SymElement::monomial(Monomial::letter(o), int(c)))
                        .unwrap();
                }
            }
        }
    }
    f
}

/// Décalage of the Lie algebra `[x,y] = y`, `[x,z] = z`.
pub fn solvable3() -> LieInfty {
    let s = Arc::new(GradedSpace::new([("x", 0), ("y", 0), ("z", 0)]).unwrap());
    let mut sk = crate::linfty::SkewBrackets::new(s);
    sk.add(&[0, 1], 1, int(1)).unwrap();
    sk.add(&[0, 2], 2, int(1)).unwrap();
    LieInfty::new(crate::linfty::decalage(&sk).unwrap()).unwrap()
}
