//! Arguments with capacities and coherent sets of them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{Axiom, ValidationReport, Violation};

/// An argument: an identifier paired with a capacity (its information content).
///
/// Two instances are equal iff both the identifier and the capacity agree, so
/// `(a3,5)` and its weakened variant `(a3,2)` are distinct arguments.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ArgumentInstance {
    pub id: String,
    pub capacity: u32,
}

impl ArgumentInstance {
    pub fn new(id: impl Into<String>, capacity: u32) -> Self {
        Self { id: id.into(), capacity }
    }

    /// Same identifier, another capacity.
    pub fn variant(&self, capacity: u32) -> Self {
        Self { id: self.id.clone(), capacity }
    }
}

impl fmt::Display for ArgumentInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.id, self.capacity)
    }
}

/// Same identifier as `s`, given capacity.
pub fn variant(s: &ArgumentInstance, capacity: u32) -> ArgumentInstance {
    s.variant(capacity)
}

/// A finite set of arguments in canonical order (identifier, then capacity).
pub type ArgSet = BTreeSet<ArgumentInstance>;

/// Builds an [`ArgSet`] from `(id, capacity)` pairs.
pub fn arg_set<'a>(items: impl IntoIterator<Item = (&'a str, u32)>) -> ArgSet {
    items.into_iter().map(|(id, c)| ArgumentInstance::new(id, c)).collect()
}

/// Renders a set as `{(a1,4),(a3,5)}`.
pub fn display_set(set: &ArgSet) -> String {
    let inner: Vec<String> = set.iter().map(ToString::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

/// Checks the three conditions on coherent sets: finiteness (always true for
/// an in-memory set), positive capacities and unique identifiers.
pub fn validate_coherent(members: &ArgSet) -> ValidationReport {
    let mut violations = Vec::new();
    for m in members {
        if m.capacity == 0 {
            violations.push(Violation::new(
                Axiom::PositiveCapacity,
                m.to_string(),
                format!("argument {} has capacity 0", m),
            ));
        }
    }
    let mut by_id: BTreeMap<&str, Vec<&ArgumentInstance>> = BTreeMap::new();
    for m in members {
        by_id.entry(m.id.as_str()).or_default().push(m);
    }
    for (id, group) in by_id {
        if group.len() > 1 {
            let witness: Vec<String> = group.iter().map(|m| m.to_string()).collect();
            violations.push(Violation::new(
                Axiom::UniqueIdentifier,
                witness.join(","),
                format!("identifier {id} is used by {} arguments", group.len()),
            ));
        }
    }
    ValidationReport::from_violations(violations)
}

/// A set of arguments satisfying [`validate_coherent`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CoherentSet {
    members: ArgSet,
}

impl CoherentSet {
    pub fn new(members: ArgSet) -> Result<Self> {
        let report = validate_coherent(&members);
        if !report.ok {
            return Err(Error::Validation(report));
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &ArgSet {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &ArgumentInstance> {
        self.members.iter()
    }

    /// The member carrying identifier `id`, if any.
    pub fn get(&self, id: &str) -> Option<&ArgumentInstance> {
        self.members.iter().find(|m| m.id == id)
    }

    pub fn contains(&self, s: &ArgumentInstance) -> bool {
        self.members.contains(s)
    }
}
