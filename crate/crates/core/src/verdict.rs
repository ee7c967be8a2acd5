//! Check reports.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graded::Bounds;

/// Where an identity failed: the first offending input in canonical order and
/// the two sides there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub monomial: String,
    pub weight: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    pub bounds: Bounds,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub parts: Vec<Verdict>,
}

impl Verdict {
    pub fn pass(check: impl Into<String>, bounds: Bounds) -> Self {
        Verdict {
            check: check.into(),
            pass: true,
            witness: None,
            bounds,
            parts: Vec::new(),
        }
    }

    pub fn fail(check: impl Into<String>, bounds: Bounds, witness: Witness) -> Self {
        Verdict {
            check: check.into(),
            pass: false,
            witness: Some(witness),
            bounds,
            parts: Vec::new(),
        }
    }

    pub fn from_witness(check: impl Into<String>, bounds: Bounds, witness: Option<Witness>) -> Self {
        match witness {
            Some(w) => Verdict::fail(check, bounds, w),
            None => Verdict::pass(check, bounds),
        }
    }

    /// Adds a sub-verdict without changing the overall outcome.
    pub fn with_part(mut self, part: Verdict) -> Self {
        self.parts.push(part);
        self
    }

    pub fn part(&self, check: &str) -> Option<&Verdict> {
        self.parts.iter().find(|p| p.check == check)
    }

    pub fn witness_weight(&self) -> Option<usize> {
        self.witness.as_ref().map(|w| w.weight)
    }

    pub fn summary(&self) -> String {
        match &self.witness {
            None if self.pass => format!("{}: pass", self.check),
            None => format!("{}: fail", self.check),
            Some(w) => format!(
                "{}: fail at {} (lhs = {}, rhs = {})",
                self.check, w.monomial, w.lhs, w.rhs
            ),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_indented(self, f, 0)
    }
}

fn write_indented(v: &Verdict, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
    writeln!(
        f,
        "{:width$}{} [weight ≤ {}, arity ≤ {}]",
        "",
        v.summary(),
        v.bounds.max_weight,
        v.bounds.max_arity,
        width = depth * 2
    )?;
    for p in &v.parts {
        write_indented(p, f, depth + 1)?;
    }
    Ok(())
}
