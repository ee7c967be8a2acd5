//! Builders for the shipped fixture files. The files under `fixtures/` are
//! exactly `save` of these.

use std::sync::Arc;

use serde_json::json;

use crate::actions::Representation;
use crate::graded::{int, GradedSpace};
use crate::io::format::{ActionSpec, CandidateSpec, StructureFile, StructureSpec};
use crate::linfty::{decalage, LieInfty, Matrix, SkewBrackets};
use crate::ooperators::{candidate_from_omega, degree_zero_cocycles};
use crate::sym::{LinearFamily, Monomial, SymElement};

fn endo_scalar(space: &Arc<GradedSpace>, c: i64) -> LinearFamily {
    let mut t = LinearFamily::endo(space.clone(), 0);
    for a in 0..space.dim() {
        t.add_term(Monomial::letter(a), a, int(c)).expect("degree 0");
    }
    t
}

/// The module `ρ(e) = [[0,a],[0,0]]`, `ρ(f) = diag(h, h+1)` on `{u, w}`,
/// written as `φ = -ρ`.
fn module(structure: &LieInfty, v: &Arc<GradedSpace>, a: i64, h: i64) -> Representation {
    let mut re = Matrix::zero();
    re.add(0, 1, int(-a));
    let mut rf = Matrix::zero();
    rf.add(0, 0, int(-h));
    rf.add(1, 1, int(-h - 1));
    Representation::from_matrices(
        structure,
        v.clone(),
        &LinearFamily::endo(v.clone(), 1),
        [(Monomial::letter(0), re), (Monomial::letter(1), rf)],
    )
    .expect("fixture")
}

/// `{e, f}` in degree -1 with `l₂(e⊙f) = -e`, the adjoint action, the
/// modules `(a, h) = (1, 0)` and `(2, 1)` of [`module`] on `{u, w}`, and
/// the candidates `negid` (Rota–Baxter of weight one) and `id` (not).
pub fn fixture_a() -> StructureFile {
    let e = Arc::new(GradedSpace::new([("e", -1), ("f", -1)]).expect("fixture"));
    let mut l = LinearFamily::endo(e.clone(), 1);
    l.add_term(Monomial::from_letters(&e, &[0, 1]).expect("fixture"), 0, int(-1))
        .expect("fixture");
    let structure = LieInfty::new(l.clone()).expect("fixture");
    let v = Arc::new(GradedSpace::new([("u", -1), ("w", -1)]).expect("fixture"));
    let rep = module(&structure, &v, 1, 0);
    let rep2 = module(&structure, &v, 2, 1);

    let mut file = StructureFile::default();
    file.add_space("E", &e);
    file.add_space("V", &v);
    file.add_family("l", "E", "E", &l);
    file.add_family("negid", "E", "E", &endo_scalar(&e, -1));
    file.add_family("id", "E", "E", &endo_scalar(&e, 1));
    file.add_family("rho", "E+V", "E+V", rep.family());
    file.add_family("rho2", "E+V", "E+V", rep2.family());
    file.add_family("zero", "V", "E", &LinearFamily::new(v.clone(), e.clone(), 0));
    file.structures.insert("A".into(), StructureSpec { brackets: "l".into() });
    file.actions.insert("adjoint".into(), ActionSpec::Adjoint { source: "A".into() });
    file.actions.insert(
        "module".into(),
        ActionSpec::Representation {
            source: "A".into(),
            space: "V".into(),
            differential: None,
            map: "rho".into(),
        },
    );
    file.actions.insert(
        "module2".into(),
        ActionSpec::Representation {
            source: "A".into(),
            space: "V".into(),
            differential: None,
            map: "rho2".into(),
        },
    );
    for name in ["negid", "id"] {
        file.candidates.insert(
            name.into(),
            CandidateSpec {
                map: name.into(),
                action: Some("adjoint".into()),
                structure: Some("A".into()),
                source: Some("A".into()),
                target: Some("A".into()),
            },
        );
    }
    file.candidates.insert(
        "zero".into(),
        CandidateSpec {
            map: "zero".into(),
            action: Some("module".into()),
            ..CandidateSpec::default()
        },
    );
    file
}

/// `{e, f, g}` in degrees 0, -1, 1 with `l₂(e⊙e) = g`, `l₂(e⊙f) = e`,
/// `l₂(f⊙g) = g`. With `2g` in the last bracket this is a Lie algebra; as
/// written the Jacobi identity first fails on `e⊙e⊙f`.
pub fn corrupted() -> StructureFile {
    let e = Arc::new(GradedSpace::new([("e", 0), ("f", -1), ("g", 1)]).expect("fixture"));
    let mut l = LinearFamily::endo(e.clone(), 1);
    for (word, out) in [(&[0usize, 0][..], 2usize), (&[0, 1][..], 0), (&[1, 2][..], 2)] {
        let m = Monomial::from_letters(&e, word).expect("fixture");
        l.add_term(m, out, int(1)).expect("fixture");
    }
    let mut file = StructureFile::default();
    file.add_space("E", &e);
    file.add_family("l", "E", "E", &l);
    file.structures.insert("C".into(), StructureSpec { brackets: "l".into() });
    file
}

/// The décalage of `[p,q] = q`, `[p,r] = 2r`, `[q,q] = r` (degrees 0, 1, 2)
/// with the coadjoint action, a candidate built from a degree 0 cocycle
/// and one built from a form that is not closed.
pub fn balanced() -> StructureFile {
    const W: usize = 3;
    let s = Arc::new(GradedSpace::new([("p", 0), ("q", 1), ("r", 2)]).expect("fixture"));
    let mut sk = SkewBrackets::new(s);
    sk.add(&[0, 1], 1, int(1)).expect("fixture");
    sk.add(&[0, 2], 2, int(2)).expect("fixture");
    sk.add(&[1, 1], 2, int(1)).expect("fixture");
    let l = LieInfty::new(decalage(&sk).expect("fixture")).expect("fixture");
    let cocycles = degree_zero_cocycles(&l, W + 1).expect("fixture");
    let closed = cocycles
        .iter()
        .find_map(|z| candidate_from_omega(&l, z, W).ok())
        .expect("an invertible cocycle");
    let estar = l.space().dual();
    let mut generic = SymElement::zero();
    for (letters, c) in [(&[0usize, 2][..], 1), (&[1, 1][..], 1), (&[0, 1, 2][..], 1)] {
        generic.add_term(Monomial::from_letters(&estar, letters).expect("fixture"), int(c));
    }
    let open = candidate_from_omega(&l, &generic, W).expect("nondegenerate");

    let mut file = StructureFile::default();
    file.add_space("P", l.space());
    file.add_family("l", "P", "P", l.brackets());
    file.add_family("closed", "P*", "P", &closed);
    file.add_family("open", "P*", "P", &open);
    file.structures.insert("B".into(), StructureSpec { brackets: "l".into() });
    file.actions.insert("coadjoint".into(), ActionSpec::Coadjoint { source: "B".into() });
    for name in ["closed", "open"] {
        file.candidates.insert(
            name.into(),
            CandidateSpec {
                map: name.into(),
                action: Some("coadjoint".into()),
                structure: Some("B".into()),
                ..CandidateSpec::default()
            },
        );
    }
    file.meta.insert("bounds".into(), json!({ "max_weight": W, "max_arity": W }));
    file
}
