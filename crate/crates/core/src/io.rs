//! The JSON framework format and query result documents.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::argument::{validate_coherent, ArgSet, ArgumentInstance, CoherentSet};
use crate::error::{Error, Result};
use crate::framework::{AxiomProfile, Framework};
use crate::np::NPFramework;
use crate::report::{Axiom, ValidationReport, Violation};
use crate::strength::{Aggregator, StrengthModel, VariantPolicy};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    Weighted,
    NielsenParsons,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArgumentEntry {
    pub id: String,
    /// Signed so that negative capacities reach validation instead of
    /// failing as a type error.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub capacity: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttackEntry {
    pub from: Vec<(String, i64)>,
    pub to: (String, i64),
    /// `null` lists the attack as explicitly absent.
    #[serde(default)]
    pub strength: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct FrameworkDocument {
    pub version: String,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aggregator: Option<Aggregator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant_policy: Option<VariantPolicy>,
    pub arguments: Vec<ArgumentEntry>,
    #[serde(default)]
    pub attacks: Vec<AttackEntry>,
}

fn capacity(id: &str, c: i64, out: &mut Vec<Violation>) -> u32 {
    if c <= 0 || c > u32::MAX as i64 {
        out.push(Violation::new(
            Axiom::PositiveCapacity,
            format!("({id},{c})"),
            format!("argument {id} has capacity {c}"),
        ));
        return 0;
    }
    c as u32
}

impl FrameworkDocument {
    pub fn from_framework(fw: &Framework) -> Self {
        let mode = match fw.profile() {
            AxiomProfile::Full => Mode::Weighted,
            AxiomProfile::Restricted => Mode::NielsenParsons,
        };
        let model = fw.strengths();
        Self {
            version: FORMAT_VERSION.to_string(),
            mode,
            aggregator: Some(model.aggregator()),
            variant_policy: Some(model.variant_policy()),
            arguments: fw
                .arguments()
                .iter()
                .map(|a| ArgumentEntry { id: a.id.clone(), capacity: Some(a.capacity as i64) })
                .collect(),
            attacks: model
                .entries()
                .iter()
                .map(|(k, v)| AttackEntry {
                    from: k.attackers.iter().map(|a| (a.id.clone(), a.capacity as i64)).collect(),
                    to: (k.target.id.clone(), k.target.capacity as i64),
                    strength: *v,
                })
                .collect(),
        }
    }

    /// Builds the framework and checks coherence. Strength axioms are not
    /// checked here; see [`into_framework`](Self::into_framework).
    pub fn into_unchecked(self) -> Result<Framework> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Parse {
                line: 0,
                column: 0,
                message: format!("unsupported format version {:?}, expected {FORMAT_VERSION:?}", self.version),
            });
        }
        let np = self.mode == Mode::NielsenParsons;
        let mut violations = Vec::new();
        let mut members = ArgSet::new();
        let mut seen: Vec<ArgumentInstance> = Vec::new();
        for a in &self.arguments {
            let c = match a.capacity {
                Some(c) => capacity(&a.id, c, &mut violations),
                None if np => 1,
                None => {
                    return Err(Error::Parse {
                        line: 0,
                        column: 0,
                        message: format!("argument {} has no capacity", a.id),
                    })
                }
            };
            let inst = ArgumentInstance::new(a.id.clone(), c);
            seen.push(inst.clone());
            members.insert(inst);
        }
        let coherent = validate_coherent(&seen.iter().filter(|a| a.capacity > 0).cloned().collect());
        let report = ValidationReport::from_violations(violations).merge(coherent);
        if members.len() != seen.len() && !report.has(Axiom::UniqueIdentifier) {
            let dup = seen.iter().find(|a| seen.iter().filter(|b| *b == *a).count() > 1).expect("duplicate");
            return Err(Error::Validation(report.merge(ValidationReport::from_violations(vec![Violation::new(
                Axiom::UniqueIdentifier,
                dup.to_string(),
                format!("argument {dup} is listed twice"),
            )]))));
        }
        if !report.ok {
            return Err(Error::Validation(report));
        }
        let aggregator = self.aggregator.unwrap_or(if np { Aggregator::ExplicitOnly } else { Aggregator::Max });
        let mut model = StrengthModel::new(aggregator, self.variant_policy.unwrap_or_default());
        let mut bad = Vec::new();
        for e in self.attacks {
            let mut inst = |(id, c): (String, i64)| ArgumentInstance::new(id.clone(), capacity(&id, c, &mut bad));
            let attackers: ArgSet = e.from.into_iter().map(&mut inst).collect();
            let target = inst(e.to);
            let strength = match (e.strength, np) {
                (Some(s), _) => Some(s),
                (None, true) => Some(target.capacity),
                (None, false) => None,
            };
            match strength {
                Some(s) => model.insert(attackers, target, s),
                None => model.insert_absent(attackers, target),
            }
        }
        if !bad.is_empty() {
            return Err(Error::Validation(ValidationReport::from_violations(bad)));
        }
        let fw = Framework::new(CoherentSet::new(members)?, model);
        Ok(if np { fw.with_profile(AxiomProfile::Restricted) } else { fw })
    }

    /// Builds the framework and rejects it unless every axiom holds.
    pub fn into_framework(self) -> Result<Framework> {
        self.into_unchecked()?.validated()
    }
}

/// Parses a document, reporting syntax and shape errors with line and column.
pub fn parse_document(text: &str) -> Result<FrameworkDocument> {
    serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })
}

pub fn parse(text: &str) -> Result<Framework> {
    parse_document(text)?.into_framework()
}

pub fn parse_unchecked(text: &str) -> Result<Framework> {
    parse_document(text)?.into_unchecked()
}

pub fn load(path: impl AsRef<Path>) -> Result<Framework> {
    parse(&fs::read_to_string(path)?)
}

pub fn load_unchecked(path: impl AsRef<Path>) -> Result<Framework> {
    parse_unchecked(&fs::read_to_string(path)?)
}

/// Serialises deterministically: canonical argument order, entries in key order.
pub fn to_string(fw: &Framework) -> String {
    let mut text = serde_json::to_string_pretty(&FrameworkDocument::from_framework(fw)).expect("document serialises");
    text.push('\n');
    text
}

pub fn save(fw: &Framework, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_string(fw))?;
    Ok(())
}

/// The group-attack framework a document describes, read without
/// capacities: every listed (non-absent) attack becomes a pair of `G`.
pub fn load_np(path: impl AsRef<Path>) -> Result<NPFramework> {
    let doc = parse_document(&fs::read_to_string(path)?)?;
    let mut np = NPFramework::default();
    for a in &doc.arguments {
        np.arguments.insert(a.id.clone());
    }
    for e in &doc.attacks {
        if e.strength.is_some() || doc.mode == Mode::NielsenParsons {
            np.attacks.insert((e.from.iter().map(|(id, _)| id.clone()).collect(), e.to.0.clone()));
        }
    }
    np.validate()?;
    Ok(np)
}

/// Sets as sorted `[id, capacity]` lists.
pub fn set_value(set: &ArgSet) -> Value {
    Value::Array(set.iter().map(|a| serde_json::json!([a.id, a.capacity])).collect())
}

pub fn sets_value(sets: &[ArgSet]) -> Value {
    Value::Array(sets.iter().map(set_value).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QueryResultDocument {
    pub version: String,
    pub query: Value,
    pub result: Value,
    pub diagnostics: Vec<String>,
    /// Wall-clock milliseconds; only present when requested, so that default
    /// output stays byte-identical across runs.
    #[serde(rename = "timingMs", skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl QueryResultDocument {
    pub fn new(query: Value, result: Value) -> Self {
        Self { version: env!("CARGO_PKG_VERSION").to_string(), query, result, diagnostics: Vec::new(), timing_ms: None }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("result serialises");
        text.push('\n');
        text
    }
}
