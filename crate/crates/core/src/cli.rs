//! Batch front end: every check on a structure file, with an `oracle` mode
//! that runs a check's fast and definition-level paths side by side.
//!
//! Exit codes: 0 pass, 1 mathematical failure (the report carries a
//! witness), 2 input error.

use std::path::PathBuf;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};

use crate::actions::{adjoint_action, Action};
use crate::error::{Error, Result};
use crate::graded::{one, Bounds};
use crate::io::{perturb, random_instance, CandidateSpec, Model, RandomKind, RandomParams, StructureFile};
use crate::linfty::{check_jacobi, check_linfty_morphism, check_square_zero, LieInfty};
use crate::ooperators::{check_ooperator, check_rota_baxter, coadjoint_cocycle_check, induced_structure};
use crate::sym::LinearFamily;
use crate::verdict::Verdict;
use crate::voronov::{deformation_check, mc_check_h, mc_check_lprime, twisted_mc_check, LPrimeElement, VData};

/// Every command that reads a structure file and reports a verdict.
pub const CHECKS: &[&str] = &[
    "check-jacobi",
    "check-morphism",
    "check-representation",
    "check-action",
    "check-ooperator",
    "check-rota-baxter",
    "induced-structure",
    "coadjoint-cocycle",
    "derived-brackets",
    "mc-h",
    "mc-lprime",
    "twist",
    "deform-check",
];

/// Named parts of a file a check runs on. Unset names default to the
/// candidate's own references, then to the only entry of that kind.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Selection {
    pub structure: Option<String>,
    pub action: Option<String>,
    pub candidate: Option<String>,
    /// Second operand of `twist` (an action) and `deform-check` (a candidate).
    pub with: Option<String>,
}

fn only<'a, V>(map: &'a std::collections::BTreeMap<String, V>, what: &str, flag: &str) -> Result<&'a str> {
    let mut keys = map.keys();
    match (keys.next(), keys.next()) {
        (Some(k), None) => Ok(k),
        (None, _) => Err(Error::Unresolved(format!("the file has no {what}"))),
        _ => Err(Error::InvalidValue {
            key: flag.into(),
            message: format!("the file has several {what}s; choose one with {flag}"),
        }),
    }
}

struct Ctx<'a> {
    model: &'a Model,
    sel: &'a Selection,
    bounds: Bounds,
}

impl<'a> Ctx<'a> {
    fn candidate(&self) -> Result<(&'a CandidateSpec, &'a LinearFamily)> {
        let name = match &self.sel.candidate {
            Some(n) => n.as_str(),
            None => only(self.model.candidates(), "candidate", "--candidate")?,
        };
        self.model.get_candidate(name)
    }

    fn structure(&self, hint: Option<&'a String>) -> Result<&'a LieInfty> {
        let name = match self.sel.structure.as_ref().or(hint) {
            Some(n) => n.as_str(),
            None => only(self.model.structures(), "structure", "--structure")?,
        };
        self.model.get_structure(name)
    }

    fn action(&self, hint: Option<&'a String>) -> Result<&'a Action> {
        let name = match self.sel.action.as_ref().or(hint) {
            Some(n) => n.as_str(),
            None => only(self.model.actions(), "action", "--action")?,
        };
        self.model.get_action(name)
    }

    fn candidate_action(&self) -> Result<(&'a LinearFamily, &'a Action)> {
        let (spec, t) = self.candidate()?;
        Ok((t, self.action(spec.action.as_ref())?))
    }

    fn with(&self) -> Result<&'a str> {
        self.sel.with.as_deref().ok_or_else(|| Error::InvalidValue {
            key: "--with".into(),
            message: "this check needs a second operand".into(),
        })
    }

    /// The 𝔏′ element of an action, or of the adjoint action of a structure
    /// when the file has no actions.
    fn lprime(&self) -> Result<LPrimeElement> {
        if self.sel.action.is_none() && self.model.actions().is_empty() {
            return Ok(LPrimeElement::from_action(&adjoint_action(self.structure(None)?)));
        }
        Ok(LPrimeElement::from_action(self.action(None)?))
    }
}

fn relabel(mut v: Verdict, check: &str) -> Verdict {
    v.check = check.into();
    v
}

fn part(v: &Verdict, name: &str) -> Verdict {
    v.part(name).cloned().unwrap_or_else(|| panic!("verdict `{}` has a `{name}` part", v.check))
}

fn mc_h(ctx: &Ctx, t: &LinearFamily, action: &Action) -> Result<Verdict> {
    let data = VData::from_action(action, ctx.bounds)?;
    mc_check_h(&data, &data.element(t.clone())?)
}

fn plus_one(b: Bounds) -> Bounds {
    Bounds {
        max_weight: (b.max_weight + 1).min(Bounds::HARD_LIMIT),
        ..b
    }
}

/// The fast-path report of `check`.
pub fn run_check(model: &Model, check: &str, sel: &Selection, bounds: Bounds) -> Result<Verdict> {
    Ok(paths(model, check, sel, bounds)?.report)
}

/// Runs `check` through both paths. Passes when the two verdicts agree.
pub fn run_oracle(model: &Model, check: &str, sel: &Selection, bounds: Bounds) -> Result<Verdict> {
    let p = paths(model, check, sel, bounds)?;
    let fast = relabel(p.fast, "fast");
    let generic = relabel(p.generic, "generic");
    let mut out = Verdict::pass(format!("oracle:{check}"), bounds);
    out.pass = p.vacuous || fast.pass == generic.pass;
    if let Some(note) = p.precondition {
        out = out.with_part(note);
    }
    Ok(out.with_part(fast).with_part(generic))
}

struct Paths {
    report: Verdict,
    fast: Verdict,
    generic: Verdict,
    /// The two paths are only claimed to agree when this part passes.
    precondition: Option<Verdict>,
    vacuous: bool,
}

impl Paths {
    fn new(report: Verdict, fast: Verdict, generic: Verdict) -> Self {
        Paths {
            report,
            fast,
            generic,
            precondition: None,
            vacuous: false,
        }
    }
}

fn paths(model: &Model, check: &str, sel: &Selection, bounds: Bounds) -> Result<Paths> {
    bounds.validate()?;
    let ctx = Ctx { model, sel, bounds };
    Ok(match check {
        "check-jacobi" => {
            let l = ctx.structure(None)?;
            let fast = check_jacobi(l.brackets(), bounds)?;
            let generic = check_square_zero(l.brackets(), bounds)?;
            Paths::new(fast.clone(), fast, generic)
        }
        "check-morphism" => {
            let (spec, phi) = ctx.candidate()?;
            let source = ctx.structure(spec.source.as_ref())?;
            let target = ctx.structure(spec.target.as_ref())?;
            let v = check_linfty_morphism(phi, source, target, bounds)?;
            let fast = part(&v, "unshuffle-identity");
            let generic = part(&v, "comorphism-identity");
            Paths::new(v, fast, generic)
        }
        "check-representation" => {
            let action = ctx.action(None)?;
            if action.family().terms().any(|(m, _)| action.sum().v_letters(m) != 1) {
                return Err(Error::InvalidValue {
                    key: "--action".into(),
                    message: "not a representation: some input has several V letters".into(),
                });
            }
            let rep = action.linear_representation()?;
            let v = rep.check(bounds)?;
            let generic = relabel(check_square_zero(&action.semidirect_family(), plus_one(bounds))?, "semidirect");
            Paths::new(v.clone(), v, generic)
        }
        "check-action" => {
            let v = ctx.action(None)?.check(bounds)?;
            let fast = part(&v, "coder-morphism");
            let generic = part(&v, "semidirect-square-zero");
            Paths::new(v, fast, generic)
        }
        "check-ooperator" => {
            let (t, action) = ctx.candidate_action()?;
            let v = check_ooperator(t, action, bounds)?;
            let generic = part(&mc_h(&ctx, t, action)?, "generic");
            Paths::new(v.clone(), v, generic)
        }
        "check-rota-baxter" => {
            let (spec, t) = ctx.candidate()?;
            let l = ctx.structure(spec.structure.as_ref())?;
            let v = check_rota_baxter(t, l, bounds)?;
            let generic = part(&mc_h(&ctx, t, &adjoint_action(l))?, "generic");
            Paths::new(v.clone(), v, generic)
        }
        "induced-structure" => {
            let (t, action) = ctx.candidate_action()?;
            match induced_structure(t, action, bounds) {
                Ok(ind) => {
                    let generic = relabel(check_jacobi(ind.structure.brackets(), bounds)?, "jacobi");
                    Paths::new(ind.verdict.clone(), ind.verdict, generic)
                }
                Err(Error::Refused(_)) => {
                    let pre = check_ooperator(t, action, bounds)?;
                    let report = Verdict::from_witness("induced-structure", bounds, pre.witness.clone()).with_part(pre);
                    Paths {
                        precondition: Some(part(&report, "ooperator")),
                        vacuous: true,
                        ..Paths::new(report.clone(), report.clone(), report)
                    }
                }
                Err(e) => return Err(e),
            }
        }
        "coadjoint-cocycle" => {
            let (spec, t) = ctx.candidate()?;
            let l = ctx.structure(spec.structure.as_ref())?;
            let cmp = coadjoint_cocycle_check(t, l, bounds)?;
            let fast = part(&cmp.verdict, "ooperator");
            let generic = part(&cmp.verdict, "cocycle");
            Paths::new(cmp.verdict, fast, generic)
        }
        "derived-brackets" | "mc-h" => {
            let (t, action) = ctx.candidate_action()?;
            let v = mc_h(&ctx, t, action)?;
            let fast = part(&v, "fast");
            let generic = part(&v, "generic");
            let report = if check == "mc-h" {
                v
            } else {
                part(&v, "derived-brackets")
            };
            Paths::new(report, fast, generic)
        }
        "mc-lprime" => {
            let v = mc_check_lprime(&ctx.lprime()?, bounds)?;
            let mut fast = Verdict::from_witness("three-way", bounds, v.witness.clone());
            fast.pass = v.pass;
            let generic = part(&v, "generic");
            Paths::new(v, fast, generic)
        }
        "twist" => {
            let a = ctx.lprime()?;
            let b = LPrimeElement::from_action(model.get_action(ctx.with()?)?);
            if a.sum() != b.sum() {
                return Err(Error::InvalidValue {
                    key: "--with".into(),
                    message: "both actions must live on the same E⊕V".into(),
                });
            }
            let a_prime = b.add(&a.scaled(&-one()))?;
            let v = twisted_mc_check(&a, &a_prime, bounds)?;
            let fast = part(&v, "twisted");
            let generic = part(&v, "sum");
            Paths::new(v, fast, generic)
        }
        "deform-check" => {
            let (t, action) = ctx.candidate_action()?;
            let (_, t_prime) = model.get_candidate(ctx.with()?)?;
            let data = VData::from_action(action, bounds)?;
            let d = deformation_check(&data, &data.element(t.clone())?, &data.element(t_prime.clone())?)?;
            let base = part(&d.verdict, "base");
            let mut fast = Verdict::from_witness("twisted", bounds, d.verdict.witness.clone());
            fast.pass = d.verdict.pass;
            let generic = part(&d.verdict, "perturbed");
            Paths {
                vacuous: !base.pass,
                precondition: Some(base),
                ..Paths::new(d.verdict, fast, generic)
            }
        }
        other => {
            return Err(Error::InvalidValue {
                key: "check".into(),
                message: format!("unknown check `{other}`"),
            })
        }
    })
}

/// `meta.bounds` of the file, then the flags.
pub fn bounds_for(file: &StructureFile, max_weight: Option<usize>, max_arity: Option<usize>) -> Result<Bounds> {
    let mut b = match file.meta.get("bounds") {
        Some(v) => serde_json::from_value::<Bounds>(v.clone()).map_err(|e| Error::InvalidValue {
            key: "meta.bounds".into(),
            message: e.to_string(),
        })?,
        None => Bounds::default(),
    };
    if let Some(w) = max_weight {
        b.max_weight = w;
    }
    if let Some(a) = max_arity {
        b.max_arity = a;
    }
    b.validate()?;
    Ok(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "linfty", about = "Exact checks for symmetric Lie ∞-algebras, actions and O-operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Largest input weight checked (default: the file's meta.bounds, else 6; at most 12).
    #[arg(long, global = true)]
    max_weight: Option<usize>,
    /// Largest bracket arity considered (same defaults as --max-weight).
    #[arg(long, global = true)]
    max_arity: Option<usize>,
    /// Seed for `random`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Candidate to check, when the file has more than one.
    #[arg(long, global = true)]
    candidate: Option<String>,
    /// Action to check, when the file has more than one.
    #[arg(long, global = true)]
    action: Option<String>,
    /// Structure to check, when the file has more than one.
    #[arg(long, global = true)]
    structure: Option<String>,
    /// Second action for `twist`, second candidate for `deform-check`.
    #[arg(long, global = true)]
    with: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generalized Jacobi identities of a structure.
    CheckJacobi { file: PathBuf },
    /// A candidate as a Lie ∞-morphism between two structures.
    CheckMorphism { file: PathBuf },
    /// A linear action as a representation.
    CheckRepresentation { file: PathBuf },
    /// The semidirect structure of an action squares to zero.
    CheckAction { file: PathBuf },
    /// A candidate `S̄(V) → E` as an O-operator for an action.
    CheckOoperator { file: PathBuf },
    /// A candidate `S̄(E) → E` as a Rota–Baxter operator of weight one.
    CheckRotaBaxter { file: PathBuf },
    /// The structure an O-operator induces on `V`.
    InducedStructure { file: PathBuf },
    /// A coadjoint candidate against the cocycle condition of its form.
    CoadjointCocycle { file: PathBuf },
    /// Derived brackets of a candidate, nested and closed form.
    DerivedBrackets { file: PathBuf },
    /// A candidate as a Maurer–Cartan element of the derived structure.
    McH { file: PathBuf },
    /// An action as a Maurer–Cartan element of 𝔏′.
    McLprime { file: PathBuf },
    /// Twisting by an action against the sum with `--with`.
    Twist { file: PathBuf },
    /// Deformations of a candidate by `--with`.
    DeformCheck { file: PathBuf },
    /// Print a seeded random structure file.
    Random {
        /// graded-space, family, lie2-algebra, representation-from-module or perturbation
        kind: String,
        #[arg(long)]
        dim: Option<usize>,
        /// Base file for perturbations (default: Fixture A).
        #[arg(long)]
        base: Option<PathBuf>,
    },
    /// Run a check through its fast and generic paths and compare.
    Oracle { check: String, file: PathBuf },
}

/// What the binary prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(e: impl std::fmt::Display) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: format!("{text}\n{}", Cli::command().render_help()),
                },
            };
        }
    };
    match execute(&cli) {
        Ok(o) => o,
        Err(e) => Outcome::input_error(e),
    }
}

fn render(v: &Verdict, format: Format) -> String {
    match format {
        Format::Text => v.to_string(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("verdicts serialize");
            s.push('\n');
            s
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let sel = Selection {
        structure: cli.structure.clone(),
        action: cli.action.clone(),
        candidate: cli.candidate.clone(),
        with: cli.with.clone(),
    };
    let (check, file, oracle) = match &cli.command {
        Command::Random { kind, dim, base } => return random_command(cli, kind, *dim, base.as_ref()),
        Command::Oracle { check, file } => (check.as_str(), file, true),
        Command::CheckJacobi { file } => ("check-jacobi", file, false),
        Command::CheckMorphism { file } => ("check-morphism", file, false),
        Command::CheckRepresentation { file } => ("check-representation", file, false),
        Command::CheckAction { file } => ("check-action", file, false),
        Command::CheckOoperator { file } => ("check-ooperator", file, false),
        Command::CheckRotaBaxter { file } => ("check-rota-baxter", file, false),
        Command::InducedStructure { file } => ("induced-structure", file, false),
        Command::CoadjointCocycle { file } => ("coadjoint-cocycle", file, false),
        Command::DerivedBrackets { file } => ("derived-brackets", file, false),
        Command::McH { file } => ("mc-h", file, false),
        Command::McLprime { file } => ("mc-lprime", file, false),
        Command::Twist { file } => ("twist", file, false),
        Command::DeformCheck { file } => ("deform-check", file, false),
    };
    let model = Model::load(file)?;
    let bounds = bounds_for(model.file(), cli.max_weight, cli.max_arity)?;
    let v = if oracle {
        run_oracle(&model, check, &sel, bounds)?
    } else {
        run_check(&model, check, &sel, bounds)?
    };
    Ok(Outcome {
        code: if v.pass { 0 } else { 1 },
        stdout: render(&v, cli.format),
        stderr: String::new(),
    })
}

fn random_command(cli: &Cli, kind: &str, dim: Option<usize>, base: Option<&PathBuf>) -> Result<Outcome> {
    let kind: RandomKind = kind.parse()?;
    let file = if kind == RandomKind::Perturbation {
        let base = match base {
            Some(p) => Model::load(p)?.file().clone(),
            None => crate::io::fixtures::fixture_a(),
        };
        let default = Bounds::new(4, 4)?;
        let bounds = bounds_for(&base, cli.max_weight.or(Some(default.max_weight)), cli.max_arity.or(Some(default.max_arity)))?;
        perturb(&base, cli.seed, bounds)?
    } else {
        let mut params = RandomParams::default();
        if let Some(d) = dim {
            params.dim = d;
        }
        if let Some(a) = cli.max_arity {
            params.max_arity = a;
        }
        random_instance(kind, cli.seed, params)?
    };
    Ok(Outcome {
        code: 0,
        stdout: file.to_text(),
        stderr: String::new(),
    })
}
