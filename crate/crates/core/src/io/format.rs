//! The structure-constant file: JSON with rationals as `"p/q"` strings.
//!
//! ```json
//! {
//!   "spaces": { "E": [["e", -1], ["f", -1]] },
//!   "families": {
//!     "l": { "source": "E", "target": "E", "degree": 1,
//!            "terms": [{ "inputs": ["e", "f"], "output": { "e": "-1" } }] }
//!   },
//!   "structures": { "A": { "brackets": "l" } }
//! }
//! ```
//!
//! Space references are a space name, `X*` for its dual or `X+Y` for a
//! direct sum (letters of `Y` renamed with primes on collision).

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::actions::{adjoint_action, coadjoint_representation, Action, Representation};
use crate::error::{Error, Result};
use crate::graded::{format_scalar, parse_scalar, GradedSpace, Scalar};
use crate::linfty::LieInfty;
use crate::sym::{LinearFamily, Monomial, SymElement};

/// A coefficient, written `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficient(pub Scalar);

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(&self.0))
    }
}

impl<'de> Deserialize<'de> for Coefficient {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_scalar(&text)
            .map(Coefficient)
            .map_err(|_| de::Error::custom(format!("invalid rational \"{text}\"")))
    }
}

/// A linear combination of basis letters, kept in file order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output(pub Vec<(String, Coefficient)>);

impl Serialize for Output {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Output {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Output;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from basis names to rationals")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<Output, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, Coefficient>()? {
                    out.push((k, v));
                }
                Ok(Output(out))
            }
        }
        d.deserialize_map(V)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub inputs: Vec<String>,
    pub output: Output,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub source: String,
    pub target: String,
    pub degree: i32,
    #[serde(default)]
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureSpec {
    pub brackets: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ActionSpec {
    /// `map` is a degree 1 family on `E+V` with mixed inputs and `V` outputs.
    General {
        source: String,
        target: String,
        map: String,
    },
    Adjoint {
        source: String,
    },
    Coadjoint {
        source: String,
    },
    /// Linear in `V`: `map` has exactly one `V` letter in each input.
    /// `differential` defaults to zero.
    Representation {
        source: String,
        space: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        differential: Option<String>,
        map: String,
    },
}

/// A map to be tested. `action` is used by O-operator checks, `structure`
/// by Rota–Baxter checks, `source`/`target` by morphism checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateSpec {
    pub map: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    #[serde(default)]
    pub spaces: BTreeMap<String, Vec<(String, i32)>>,
    #[serde(default)]
    pub families: BTreeMap<String, FamilySpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub structures: BTreeMap<String, StructureSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub actions: BTreeMap<String, ActionSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub candidates: BTreeMap<String, CandidateSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, serde_json::Value>,
}

impl StructureFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Pretty JSON with a trailing newline. Canonical when `self` came out
    /// of [`Model::file`].
    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("plain data serializes");
        let mut s = String::new();
        write_value(&mut s, &value, 0);
        s.push('\n');
        s
    }

    pub fn add_space(&mut self, name: &str, space: &GradedSpace) {
        let basis = space.basis().iter().map(|b| (b.name.clone(), b.degree)).collect();
        self.spaces.insert(name.into(), basis);
    }

    /// Records `f` under `name`; `source` and `target` are space references.
    pub fn add_family(&mut self, name: &str, source: &str, target: &str, f: &LinearFamily) {
        self.families.insert(name.into(), family_spec(source, target, f));
    }
}

const INLINE_WIDTH: usize = 72;

fn inline(v: &serde_json::Value) -> String {
    use serde_json::Value;
    match v {
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::Object(map) => {
            let parts: Vec<String> = map
                .iter()
                .map(|(k, v)| format!("{}: {}", Value::String(k.clone()), inline(v)))
                .collect();
            format!("{{{}}}", parts.join(", "))
        }
        scalar => scalar.to_string(),
    }
}

/// Pretty JSON where any container that fits on a short line stays inline.
fn write_value(out: &mut String, v: &serde_json::Value, depth: usize) {
    use serde_json::Value;
    let flat = inline(v);
    if flat.len() + 2 * depth <= INLINE_WIDTH {
        out.push_str(&flat);
        return;
    }
    let pad = "  ".repeat(depth + 1);
    match v {
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad);
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(depth));
            out.push(']');
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(depth));
            out.push('}');
        }
        _ => out.push_str(&flat),
    }
}

pub(crate) fn family_spec(source: &str, target: &str, f: &LinearFamily) -> FamilySpec {
    let terms = f
        .terms()
        .map(|(m, value)| Term {
            inputs: m.letters().iter().map(|&l| f.source().name(l as usize).to_string()).collect(),
            output: Output(
                value
                    .iter()
                    .map(|(o, c)| (f.target().name(o.letters()[0] as usize).to_string(), Coefficient(c.clone())))
                    .collect(),
            ),
        })
        .collect();
    FamilySpec {
        source: source.into(),
        target: target.into(),
        degree: f.degree(),
        terms,
    }
}

/// A loaded file with every reference resolved.
#[derive(Clone, Debug)]
pub struct Model {
    file: StructureFile,
    spaces: BTreeMap<String, Arc<GradedSpace>>,
    families: BTreeMap<String, LinearFamily>,
    structures: BTreeMap<String, LieInfty>,
    actions: BTreeMap<String, Action>,
}

fn unresolved(key: String, what: &str, name: &str) -> Error {
    Error::Unresolved(format!("{key}: no {what} named `{name}`"))
}

fn at(key: &str, e: Error) -> Error {
    match e {
        Error::DegreeMismatch { key: inner, expected, found } => Error::DegreeMismatch {
            key: format!("{key} ({inner})"),
            expected,
            found,
        },
        Error::Malformed(m) => Error::Malformed(format!("{key}: {m}")),
        Error::Unresolved(m) => Error::Unresolved(format!("{key}: {m}")),
        other => other,
    }
}

impl Model {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Model::from_text(&text)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        Model::resolve(StructureFile::parse(text)?)
    }

    pub fn resolve(raw: StructureFile) -> Result<Self> {
        let mut spaces = BTreeMap::new();
        for (name, basis) in &raw.spaces {
            if name.contains(['*', '+']) {
                return Err(Error::InvalidValue {
                    key: format!("spaces.{name}"),
                    message: "space names may not contain `*` or `+`".into(),
                });
            }
            let space = GradedSpace::new(basis.iter().cloned()).map_err(|e| at(&format!("spaces.{name}"), e))?;
            spaces.insert(name.clone(), Arc::new(space));
        }
        let mut model = Model {
            file: StructureFile {
                spaces: raw.spaces.clone(),
                meta: raw.meta.clone(),
                ..StructureFile::default()
            },
            spaces,
            families: BTreeMap::new(),
            structures: BTreeMap::new(),
            actions: BTreeMap::new(),
        };

        for (name, spec) in &raw.families {
            let key = format!("families.{name}");
            let source = model.space_ref(&format!("{key}.source"), &spec.source)?;
            let target = model.space_ref(&format!("{key}.target"), &spec.target)?;
            let mut f = LinearFamily::new(source.clone(), target.clone(), spec.degree);
            for (i, term) in spec.terms.iter().enumerate() {
                let tkey = format!("{key}.terms[{i}]");
                let names: Vec<&str> = term.inputs.iter().map(String::as_str).collect();
                if names.is_empty() {
                    return Err(Error::InvalidValue {
                        key: tkey,
                        message: "a term needs at least one input".into(),
                    });
                }
                let (m, neg) = match Monomial::parse_names(&source, &names) {
                    Ok(x) => x,
                    // a repeated odd letter: the word is zero
                    Err(Error::Malformed(_)) => continue,
                    Err(Error::Unresolved(n)) => return Err(unresolved(format!("{tkey}.inputs"), "basis element", &n)),
                    Err(e) => return Err(e),
                };
                let mut out = SymElement::zero();
                for (letter, c) in &term.output.0 {
                    let o = target
                        .index_of(letter)
                        .ok_or_else(|| unresolved(format!("{tkey}.output"), "basis element", letter))?;
                    let c = if neg { -c.0.clone() } else { c.0.clone() };
                    out.add_term(Monomial::letter(o), c);
                }
                f.add(m, &out).map_err(|e| at(&tkey, e))?;
            }
            model.file.families.insert(name.clone(), family_spec(&spec.source, &spec.target, &f));
            model.families.insert(name.clone(), f);
        }

        for (name, spec) in &raw.structures {
            let key = format!("structures.{name}");
            let f = model.family(&format!("{key}.brackets"), &spec.brackets)?;
            if !f.is_endo() {
                return Err(Error::InvalidValue {
                    key,
                    message: "brackets must map a space to itself".into(),
                });
            }
            if f.degree() != 1 {
                return Err(Error::DegreeMismatch {
                    key: format!("{key}.brackets"),
                    expected: 1,
                    found: f.degree(),
                });
            }
            let l = LieInfty::new(f.clone()).map_err(|e| at(&key, e))?;
            model.structures.insert(name.clone(), l);
        }
        model.file.structures = raw.structures.clone();

        for (name, spec) in &raw.actions {
            let key = format!("actions.{name}");
            let action = model.resolve_action(&key, spec).map_err(|e| at(&key, e))?;
            model.actions.insert(name.clone(), action);
        }
        model.file.actions = raw.actions.clone();

        for (name, spec) in &raw.candidates {
            let key = format!("candidates.{name}");
            model.family(&format!("{key}.map"), &spec.map)?;
            if let Some(a) = &spec.action {
                model.action(&format!("{key}.action"), a)?;
            }
            for s in [&spec.structure, &spec.source, &spec.target].into_iter().flatten() {
                model.structure(&key, s)?;
            }
        }
        model.file.candidates = raw.candidates.clone();
        Ok(model)
    }

    fn resolve_action(&self, key: &str, spec: &ActionSpec) -> Result<Action> {
        match spec {
            ActionSpec::General { source, target, map } => {
                let s = self.structure(&format!("{key}.source"), source)?;
                let t = self.structure(&format!("{key}.target"), target)?;
                let phi = self.family(&format!("{key}.map"), map)?;
                Action::new(s, t, phi.clone())
            }
            ActionSpec::Adjoint { source } => Ok(adjoint_action(self.structure(&format!("{key}.source"), source)?)),
            ActionSpec::Coadjoint { source } => {
                coadjoint_representation(self.structure(&format!("{key}.source"), source)?).to_action()
            }
            ActionSpec::Representation {
                source,
                space,
                differential,
                map,
            } => {
                let s = self.structure(&format!("{key}.source"), source)?;
                let v = self.space_ref(&format!("{key}.space"), space)?;
                let d = match differential {
                    Some(d) => self.family(&format!("{key}.differential"), d)?.clone(),
                    None => LinearFamily::endo(v.clone(), 1),
                };
                let phi = self.family(&format!("{key}.map"), map)?;
                Representation::new(s, v, &d, phi.clone())?.to_action()
            }
        }
    }

    /// Resolves `X`, `X*` and `X+Y`.
    fn space_ref(&self, key: &str, reference: &str) -> Result<Arc<GradedSpace>> {
        if let Some((a, b)) = reference.split_once('+') {
            let a = self.space_ref(key, a.trim())?;
            let b = self.space_ref(key, b.trim())?;
            return Ok(Arc::new(a.direct_sum(&b)));
        }
        if let Some(base) = reference.strip_suffix('*') {
            return Ok(Arc::new(self.space_ref(key, base)?.dual()));
        }
        self.spaces
            .get(reference)
            .cloned()
            .ok_or_else(|| unresolved(key.into(), "space", reference))
    }

    fn family(&self, key: &str, name: &str) -> Result<&LinearFamily> {
        self.families.get(name).ok_or_else(|| unresolved(key.into(), "family", name))
    }

    fn structure(&self, key: &str, name: &str) -> Result<&LieInfty> {
        self.structures.get(name).ok_or_else(|| unresolved(key.into(), "structure", name))
    }

    fn action(&self, key: &str, name: &str) -> Result<&Action> {
        self.actions.get(name).ok_or_else(|| unresolved(key.into(), "action", name))
    }

    /// The canonical form of the loaded file.
    pub fn file(&self) -> &StructureFile {
        &self.file
    }

    pub fn save(&self) -> String {
        self.file.to_text()
    }

    pub fn save_to(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.save())?;
        Ok(())
    }

    pub fn spaces(&self) -> &BTreeMap<String, Arc<GradedSpace>> {
        &self.spaces
    }

    pub fn families(&self) -> &BTreeMap<String, LinearFamily> {
        &self.families
    }

    pub fn structures(&self) -> &BTreeMap<String, LieInfty> {
        &self.structures
    }

    pub fn actions(&self) -> &BTreeMap<String, Action> {
        &self.actions
    }

    pub fn candidates(&self) -> &BTreeMap<String, CandidateSpec> {
        &self.file.candidates
    }

    pub fn get_family(&self, name: &str) -> Result<&LinearFamily> {
        self.family("family", name)
    }

    pub fn get_structure(&self, name: &str) -> Result<&LieInfty> {
        self.structure("structure", name)
    }

    pub fn get_action(&self, name: &str) -> Result<&Action> {
        self.action("action", name)
    }

    pub fn get_candidate(&self, name: &str) -> Result<(&CandidateSpec, &LinearFamily)> {
        let spec = self
            .file
            .candidates
            .get(name)
            .ok_or_else(|| unresolved("candidate".into(), "candidate", name))?;
        Ok((spec, self.family("candidate", &spec.map)?))
    }
}
