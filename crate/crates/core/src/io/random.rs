//! Seeded instance generators. Every output is a [`StructureFile`], so the
//! same seed always gives the same bytes.

use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::actions::{Action, Representation};
use crate::cli::{run_check, Selection};
use crate::error::{Error, Result};
use crate::graded::{int, Bounds, GradedSpace};
use crate::io::format::{family_spec, ActionSpec, CandidateSpec, Model, StructureFile, StructureSpec};
use crate::io::fixtures;
use crate::linfty::{decalage, LieInfty, Matrix, SkewBrackets};
use crate::sym::{monomials_up_to, LinearFamily, Monomial, SymElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomKind {
    GradedSpace,
    Family,
    Lie2Algebra,
    RepresentationFromModule,
    Perturbation,
}

impl FromStr for RandomKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "graded-space" => RandomKind::GradedSpace,
            "family" => RandomKind::Family,
            "lie2-algebra" => RandomKind::Lie2Algebra,
            "representation-from-module" => RandomKind::RepresentationFromModule,
            "perturbation" => RandomKind::Perturbation,
            other => {
                return Err(Error::InvalidValue {
                    key: "kind".into(),
                    message: format!("unknown random kind `{other}`"),
                })
            }
        })
    }
}

/// Size parameters. Caps: `dim ≤ 6`, `max_arity ≤ 4`, `|degree| ≤ 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomParams {
    pub dim: usize,
    pub max_arity: usize,
    pub max_degree: i32,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            dim: 2,
            max_arity: 3,
            max_degree: 3,
        }
    }
}

impl RandomParams {
    pub const MAX_DIM: usize = 6;
    pub const MAX_ARITY: usize = 4;
    pub const MAX_DEGREE: i32 = 3;

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 || self.dim > Self::MAX_DIM {
            return Err(Error::Truncation {
                what: "random dimension",
                needed: self.dim,
                cap: Self::MAX_DIM,
            });
        }
        if self.max_arity == 0 || self.max_arity > Self::MAX_ARITY {
            return Err(Error::Truncation {
                what: "random arity",
                needed: self.max_arity,
                cap: Self::MAX_ARITY,
            });
        }
        if !(0..=Self::MAX_DEGREE).contains(&self.max_degree) {
            return Err(Error::Truncation {
                what: "random degree range",
                needed: self.max_degree.unsigned_abs() as usize,
                cap: Self::MAX_DEGREE as usize,
            });
        }
        Ok(())
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `kind` from `seed`. Perturbations start from Fixture A; use
/// [`perturb`] for another base.
pub fn random_instance(kind: RandomKind, seed: u64, params: RandomParams) -> Result<StructureFile> {
    params.validate()?;
    let mut r = rng(seed);
    let mut file = StructureFile::default();
    match kind {
        RandomKind::GradedSpace => {
            let e = random_space(&mut r, "e", params);
            file.add_space("E", &e);
        }
        RandomKind::Family => {
            let e = Arc::new(random_space(&mut r, "e", params));
            let degree = r.gen_range(-1..=1);
            let f = random_family(&mut r, &e, &e, degree, params.max_arity, 0.5, |_| true);
            file.add_space("E", &e);
            file.add_family("f", "E", "E", &f);
        }
        RandomKind::Lie2Algebra => {
            let l = random_solvable(&mut r, params.dim)?;
            add_structure(&mut file, &l);
        }
        RandomKind::RepresentationFromModule => {
            let l = random_solvable(&mut r, params.dim)?;
            add_structure(&mut file, &l);
            let rep = twisted_adjoint_module(&mut r, &l)?;
            file.add_space("V", rep.space());
            file.add_family("rho", "E+V", "E+V", rep.family());
            file.actions.insert(
                "module".into(),
                ActionSpec::Representation {
                    source: "L".into(),
                    space: "V".into(),
                    differential: None,
                    map: "rho".into(),
                },
            );
            file.add_family("zero", "V", "E", &LinearFamily::new(rep.space().clone(), l.space().clone(), 0));
            file.candidates.insert(
                "zero".into(),
                CandidateSpec {
                    map: "zero".into(),
                    action: Some("module".into()),
                    ..CandidateSpec::default()
                },
            );
        }
        RandomKind::Perturbation => {
            return perturb(&fixtures::fixture_a(), seed, Bounds::new(4, 4)?);
        }
    }
    file.meta.insert("generator".into(), json!({ "kind": kind_name(kind), "seed": seed }));
    Model::resolve(file).map(|m| m.file().clone())
}

fn kind_name(kind: RandomKind) -> &'static str {
    match kind {
        RandomKind::GradedSpace => "graded-space",
        RandomKind::Family => "family",
        RandomKind::Lie2Algebra => "lie2-algebra",
        RandomKind::RepresentationFromModule => "representation-from-module",
        RandomKind::Perturbation => "perturbation",
    }
}

fn add_structure(file: &mut StructureFile, l: &LieInfty) {
    file.add_space("E", l.space());
    file.add_family("l", "E", "E", l.brackets());
    file.structures.insert("L".into(), StructureSpec { brackets: "l".into() });
}

pub fn random_space(r: &mut ChaCha8Rng, prefix: &str, params: RandomParams) -> GradedSpace {
    let d = params.max_degree;
    let basis: Vec<(String, i32)> = (1..=params.dim)
        .map(|i| (format!("{prefix}{i}"), r.gen_range(-d..=d)))
        .collect();
    GradedSpace::new(basis).expect("distinct generated names")
}

/// Small integer coefficients on inputs of weight `≤ max_arity` accepted by
/// `keep`; each admissible entry is nonzero with probability `density`.
pub fn random_family(
    r: &mut ChaCha8Rng,
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
            if target.degree(o) == want && r.gen_bool(density) {
                let c = r.gen_range(-2i64..=2);
                if c != 0 {
                    f.add_term(m.clone(), o, int(c)).expect("degree matches by construction");
                }
            }
        }
    }
    f
}

/// The décalage of `[e₁, e_j] = Σ_{k≥j} A_{jk} e_k` (`j, k ≥ 2`), all other
/// brackets zero: `ℝ` acting on an abelian ideal, so solvable and Jacobi
/// for every upper triangular `A`.
pub fn random_solvable(r: &mut ChaCha8Rng, dim: usize) -> Result<LieInfty> {
    let (sk, _) = solvable_skew(r, dim)?;
    LieInfty::new(decalage(&sk)?)
}

#[allow(clippy::needless_range_loop)]
fn solvable_skew(r: &mut ChaCha8Rng, dim: usize) -> Result<(SkewBrackets, Vec<Vec<i64>>)> {
    let s = Arc::new(GradedSpace::new((1..=dim).map(|i| (format!("e{i}"), 0)))?);
    let mut a = vec![vec![0i64; dim]; dim];
    for j in 1..dim {
        for k in j..dim {
            a[j][k] = r.gen_range(-2..=2);
        }
    }
    let mut sk = SkewBrackets::new(s);
    for j in 1..dim {
        for k in 1..dim {
            if a[j][k] != 0 {
                sk.add(&[0, j], k, int(a[j][k]))?;
            }
        }
    }
    Ok((sk, a))
}

/// `V = 𝔤` with `ρ(x) = ad x + λ χ(x)`, where the character `χ` is `1` on
/// `e₁` and vanishes on the ideal. Written in the shifted convention
/// `φ(x⊙v) = -ρ(x)v`.
fn twisted_adjoint_module(r: &mut ChaCha8Rng, l: &LieInfty) -> Result<Representation> {
    let skew = crate::linfty::inverse_decalage(l.brackets())?;
    let dim = l.space().dim();
    let lambda = r.gen_range(-2i64..=2);
    let v = Arc::new(GradedSpace::new((1..=dim).map(|i| (format!("v{i}"), -1)))?);
    let mut matrices = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut m = Matrix::zero();
        for j in 0..dim {
            let out = skew.eval_word(&[i as u16, j as u16]);
            for (o, c) in out.iter() {
                m.add(o.letters()[0] as usize, j, -c.clone());
            }
        }
        if i == 0 {
            for j in 0..dim {
                m.add(j, j, int(-lambda));
            }
        }
        matrices.push((Monomial::letter(i), m));
    }
    let d = LinearFamily::endo(v.clone(), 1);
    Representation::from_matrices(l, v, &d, matrices)
}

/// The action of `e₁` on a module `V` by an arbitrary matrix `B` (the rest of
/// `𝔤` acts by zero), from the same seed as [`random_solvable`].
pub fn random_module_action(r: &mut ChaCha8Rng, l: &LieInfty, vdim: usize) -> Result<Action> {
    let v = Arc::new(GradedSpace::new((1..=vdim).map(|i| (format!("v{i}"), -1)))?);
    let mut b = Matrix::zero();
    for i in 0..vdim {
        for j in 0..vdim {
            let c = r.gen_range(-2i64..=2);
            if c != 0 {
                b.add(i, j, int(c));
            }
        }
    }
    let d = LinearFamily::endo(v.clone(), 1);
    Representation::from_matrices(l, v, &d, [(Monomial::letter(0), b)])?.to_action()
}

/// Which check an injected defect breaks, and where.
#[derive(Clone, Debug)]
enum Target {
    Structure(String),
    Action(String),
    Candidate(String),
}

impl Target {
    fn check(&self) -> &'static str {
        match self {
            Target::Structure(_) => "check-jacobi",
            Target::Action(_) => "check-action",
            Target::Candidate(_) => "check-ooperator",
        }
    }

    fn selection(&self) -> Selection {
        let mut s = Selection::default();
        match self {
            Target::Structure(n) => s.structure = Some(n.clone()),
            Target::Action(n) => s.action = Some(n.clone()),
            Target::Candidate(n) => s.candidate = Some(n.clone()),
        }
        s
    }
}

/// Adds one random term to a structure, action or candidate of `base` so
/// that the matching check fails at `bounds`. The defect is recorded under
/// `meta.perturbation`; re-running `check` with `selection` reproduces it.
pub fn perturb(base: &StructureFile, seed: u64, bounds: Bounds) -> Result<StructureFile> {
    let model = Model::resolve(base.clone())?;
    let mut r = rng(seed);
    let mut targets = Vec::new();
    for (name, spec) in &base.structures {
        targets.push((Target::Structure(name.clone()), spec.brackets.clone()));
    }
    for (name, spec) in &base.actions {
        match spec {
            ActionSpec::General { map, .. } | ActionSpec::Representation { map, .. } => {
                targets.push((Target::Action(name.clone()), map.clone()))
            }
            _ => {}
        }
    }
    for (name, spec) in &base.candidates {
        if spec.action.is_some() {
            targets.push((Target::Candidate(name.clone()), spec.map.clone()));
        }
    }
    targets.shuffle(&mut r);
    for (target, family) in targets {
        let f = model.get_family(&family)?;
        let spec = &base.families[&family];
        let split = match &target {
            Target::Action(a) => Some(model.get_action(a)?.sum().clone()),
            _ => None,
        };
        let linear_in_v = matches!(&target, Target::Action(a) if matches!(base.actions[a], ActionSpec::Representation { .. }));
        let inputs: Vec<Monomial> = monomials_up_to(f.source(), bounds.max_arity.min(3))
            .into_iter()
            .filter(|m| match &split {
                None => true,
                Some(s) if linear_in_v => s.v_letters(m) == 1 && !s.is_pure_v(m),
                Some(s) => !s.is_pure_e(m) && !s.is_pure_v(m),
            })
            .collect();
        for _ in 0..32 {
            let Some(m) = inputs.choose(&mut r) else { break };
            let want = m.degree(f.source()) + f.degree();
            let outs: Vec<usize> = (0..f.target().dim())
                .filter(|&o| f.target().degree(o) == want)
                .filter(|&o| split.as_ref().is_none_or(|s| s.is_v_letter(o)))
                .collect();
            let Some(&o) = outs.choose(&mut r) else { continue };
            let c = int(*[-2i64, -1, 1, 2].choose(&mut r).unwrap());
            let mut g = f.clone();
            g.add_term(m.clone(), o, c.clone())?;
            let mut file = base.clone();
            file.families.insert(family.clone(), family_spec(&spec.source, &spec.target, &g));
            let Ok(candidate) = Model::resolve(file.clone()) else { continue };
            let outcome = run_check(&candidate, target.check(), &target.selection(), bounds)?;
            if outcome.pass {
                continue;
            }
            let (name, what) = match &target {
                Target::Structure(n) => (n, "structure"),
                Target::Action(n) => (n, "action"),
                Target::Candidate(n) => (n, "candidate"),
            };
            let value = SymElement::monomial(Monomial::letter(o), c);
            file.meta.insert(
                "perturbation".into(),
                json!({
                    "check": target.check(),
                    what: name,
                    "family": family,
                    "input": m.display(f.source()),
                    "added": value.display(f.target()),
                    "seed": seed,
                    "max_weight": bounds.max_weight,
                    "max_arity": bounds.max_arity,
                }),
            );
            return Model::resolve(file).map(|m| m.file().clone());
        }
    }
    Err(Error::Refused("no defect breaks a check of this file".into()))
}
