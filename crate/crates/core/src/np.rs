//! Abstract frameworks with group attacks, their classical semantics, and the
//! check that a restricted weighted framework behaves as one.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::argument::display_set;
use crate::engine::{maximal, Semantics};
use crate::error::{Error, Result};
use crate::framework::Framework;
use crate::report::{Axiom, ValidationReport, Violation};
use crate::strength::Aggregator;

pub type NameSet = BTreeSet<String>;

/// `(A, G)`: arguments plus a relation from nonempty attacker sets to targets.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NPFramework {
    pub arguments: NameSet,
    pub attacks: BTreeSet<(NameSet, String)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NPKind {
    ConflictFree,
    Admissible,
    Preferred,
}

impl fmt::Display for NPKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NPKind::ConflictFree => "conflict-free",
            NPKind::Admissible => "admissible",
            NPKind::Preferred => "preferred",
        })
    }
}

impl FromStr for NPKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "conflict-free" => Ok(NPKind::ConflictFree),
            "admissible" => Ok(NPKind::Admissible),
            "preferred" => Ok(NPKind::Preferred),
            other => Err(format!("unknown kind {other} (expected conflict-free, admissible or preferred)")),
        }
    }
}

fn names<S: AsRef<str>>(items: &[S]) -> NameSet {
    items.iter().map(|s| s.as_ref().to_string()).collect()
}

fn show(set: &NameSet) -> String {
    format!("{{{}}}", set.iter().cloned().collect::<Vec<_>>().join(","))
}

impl NPFramework {
    pub fn new<S: AsRef<str>>(arguments: &[S]) -> Self {
        Self { arguments: names(arguments), attacks: BTreeSet::new() }
    }

    /// Adds `(attackers, target)` to `G`.
    pub fn attack<S: AsRef<str>>(mut self, attackers: &[S], target: &str) -> Self {
        self.attacks.insert((names(attackers), target.to_string()));
        self
    }

    /// Checks that attacker sets are nonempty and every name is an argument.
    pub fn validate(&self) -> Result<()> {
        for (att, t) in &self.attacks {
            if att.is_empty() {
                return Err(Error::PreconditionUnmet(format!("empty attacker set on {t}")));
            }
            for a in att.iter().chain(std::iter::once(t)) {
                if !self.arguments.contains(a) {
                    return Err(Error::UnknownArgument(a.clone()));
                }
            }
        }
        Ok(())
    }

    /// `A1` attacks `a` iff some `(A', a) ∈ G` has `A' ⊆ A1`.
    pub fn attacks(&self, a1: &NameSet, a: &str) -> bool {
        self.attacks.iter().any(|(att, t)| t == a && att.is_subset(a1))
    }

    /// Whether `(a1, a) ∈ G` has no proper subset also in `G`.
    pub fn is_minimal(&self, a1: &NameSet, a: &str) -> Result<bool> {
        if !self.attacks.contains(&(a1.clone(), a.to_string())) {
            return Err(Error::NotAnAttack { attackers: show(a1), target: a.to_string() });
        }
        Ok(!self.attacks.iter().any(|(att, t)| t == a && att.len() < a1.len() && att.is_subset(a1)))
    }

    fn index(&self) -> BTreeMap<&str, usize> {
        self.arguments.iter().enumerate().map(|(i, a)| (a.as_str(), i)).collect()
    }

    /// Per target, the attacker masks of the minimal attacks and of all attacks.
    fn masks(&self) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
        let idx = self.index();
        let n = self.arguments.len();
        let mut all = vec![Vec::new(); n];
        for (att, t) in &self.attacks {
            let m = att.iter().fold(0u32, |m, a| m | 1 << idx[a.as_str()]);
            all[idx[t.as_str()]].push(m);
        }
        let minimal = all
            .iter()
            .map(|ms| {
                ms.iter().copied().filter(|&m| !ms.iter().any(|&o| o != m && o & m == o)).collect()
            })
            .collect();
        (minimal, all)
    }

    fn set_of(&self, mask: u32) -> NameSet {
        self.arguments.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, a)| a.clone()).collect()
    }

    /// Exhaustive enumeration of the conflict-free, admissible or preferred sets.
    pub fn semantics(&self, kind: NPKind, limit: usize) -> Result<Vec<NameSet>> {
        let masks = self.semantics_masks(kind, limit)?;
        let mut out: Vec<NameSet> = masks.into_iter().map(|m| self.set_of(m)).collect();
        out.sort();
        Ok(out)
    }

    pub(crate) fn semantics_masks(&self, kind: NPKind, limit: usize) -> Result<Vec<u32>> {
        let n = self.arguments.len();
        if n > limit.min(crate::framework::MAX_ARGUMENTS) {
            return Err(Error::SizeLimitExceeded { size: n, limit });
        }
        let (minimal, all) = self.masks();
        let attacks = |set: u32, t: usize| all[t].iter().any(|&m| m & !set == 0);
        let mut cf = Vec::new();
        let mut adm = Vec::new();
        for set in 0..(1u32 << n) {
            let members = (0..n).filter(|i| set >> i & 1 == 1);
            let conflict_free = members.clone().all(|a| !attacks(set, a));
            if !conflict_free {
                continue;
            }
            cf.push(set);
            let defends = |a: usize| {
                minimal[a].iter().all(|&m| (0..n).any(|x| m >> x & 1 == 1 && attacks(set, x)))
            };
            if members.clone().all(defends) {
                adm.push(set);
            }
        }
        Ok(match kind {
            NPKind::ConflictFree => cf,
            NPKind::Admissible => adm,
            NPKind::Preferred => maximal(&adm),
        })
    }

    /// The bridge from a weighted framework: each argument becomes its
    /// identifier and every listed or singleton attack among members of `S`
    /// becomes a pair of `G`.
    pub fn from_framework(fw: &Framework) -> Self {
        let sem = fw.semantics();
        let mut np = NPFramework {
            arguments: fw.arguments().iter().map(|a| a.id.clone()).collect(),
            attacks: BTreeSet::new(),
        };
        for t in fw.arguments().iter() {
            for x in fw.arguments().iter() {
                if x.id != t.id && matches!(sem.resolve_instances(&[x], t), Ok(Some(_))) {
                    np.attacks.insert(([x.id.clone()].into(), t.id.clone()));
                }
            }
        }
        for (key, value) in fw.strengths().entries() {
            if value.is_none() || !fw.arguments().contains(&key.target) {
                continue;
            }
            if key.attackers.iter().all(|a| fw.arguments().contains(a)) {
                np.attacks.insert((key.attackers.iter().map(|a| a.id.clone()).collect(), key.target.id.clone()));
            }
        }
        np
    }
}

pub fn np_attacks(np: &NPFramework, a1: &NameSet, a: &str) -> bool {
    np.attacks(a1, a)
}

pub fn np_minimal(np: &NPFramework, a1: &NameSet, a: &str) -> Result<bool> {
    np.is_minimal(a1, a)
}

pub fn np_semantics(np: &NPFramework, kind: NPKind) -> Result<Vec<NameSet>> {
    np.semantics(kind, crate::engine::DEFAULT_LIMIT)
}

/// Verifies that a restricted framework (explicit strengths only, every
/// attack a defeat) coincides with its group-attack reading: the
/// conflict-eliminable sets are the conflict-free ones, intrinsic arguments
/// are the sets themselves and views keep every argument, c-attacks are
/// attacks and are always c-defeats, and c-admissible / c-preferred sets are
/// the admissible / preferred ones.
pub fn check_reduction(fw: &Framework) -> Result<ValidationReport> {
    let sem = fw.semantics();
    sem.check_limit()?;
    if fw.strengths().aggregator() != Aggregator::ExplicitOnly {
        return Err(Error::PreconditionUnmet(format!(
            "strengths must be explicit-only, found aggregator {}",
            fw.strengths().aggregator()
        )));
    }
    for (key, value) in fw.strengths().entries() {
        if let Some(v) = value {
            if *v < key.target.capacity {
                return Err(Error::PreconditionUnmet(format!("attack {key} with strength {v} does not defeat its target")));
            }
        }
    }
    for t in 0..sem.n {
        for x in 0..sem.n {
            if let Some(v) = sem.single(x, t)? {
                if v < sem.caps[t] {
                    return Err(Error::PreconditionUnmet(format!(
                        "attack of {} on {} does not defeat",
                        fw.strengths().instance(sem.slot(x)),
                        fw.strengths().instance(sem.slot(t))
                    )));
                }
            }
        }
    }
    let np = NPFramework::from_framework(fw);
    let mut violations = Vec::new();
    let claim = |n: u8| Axiom::Reduction(n);

    let ce = sem.ce_masks()?;
    let cf = np.semantics_masks(NPKind::ConflictFree, usize::MAX)?;
    compare(&sem, &ce, &cf, claim(1), "conflict-eliminable", "conflict-free", &mut violations);

    let all: Vec<String> = fw.arguments().iter().map(|a| a.id.clone()).collect();
    for &m in &ce {
        let set = sem.set(m);
        let alpha = sem.intrinsic(&set)?;
        if alpha.members != set {
            violations.push(Violation::new(
                claim(2),
                display_set(&set),
                format!("intrinsic arguments are {alpha}"),
            ));
        }
        let view = sem.view(&set)?;
        let ids: Vec<String> = view.arguments.iter().map(|a| a.id.clone()).collect();
        if ids != all {
            violations.push(Violation::new(claim(2), display_set(&set), "view does not keep every identifier"));
        }
        let names: NameSet = set.iter().map(|a| a.id.clone()).collect();
        for (t, target) in fw.arguments().iter().enumerate() {
            let c_att = sem.c_attacks_at(m, t)?;
            let att = np.attacks(&names, &target.id);
            if c_att && !att {
                violations.push(Violation::new(
                    claim(3),
                    format!("{} on {}", display_set(&set), target),
                    "c-attack without an attack",
                ));
            }
            if c_att != sem.c_defeats_at(m, t)? {
                violations.push(Violation::new(
                    claim(4),
                    format!("{} on {}", display_set(&set), target),
                    "c-attack that is not a c-defeat",
                ));
            }
        }
    }

    let cadm = sem.c_admissible_masks()?;
    let adm = np.semantics_masks(NPKind::Admissible, usize::MAX)?;
    compare(&sem, &cadm, &adm, claim(5), "c-admissible", "admissible", &mut violations);
    let cpref = sem.c_preferred_masks()?;
    let pref = np.semantics_masks(NPKind::Preferred, usize::MAX)?;
    compare(&sem, &cpref, &pref, claim(5), "c-preferred", "preferred", &mut violations);
    Ok(ValidationReport::from_violations(violations))
}

fn compare(
    sem: &Semantics<'_>,
    ours: &[u32],
    theirs: &[u32],
    axiom: Axiom,
    ours_name: &str,
    theirs_name: &str,
    out: &mut Vec<Violation>,
) {
    // both enumerations index arguments in canonical identifier order
    let a: BTreeSet<u32> = ours.iter().copied().collect();
    let b: BTreeSet<u32> = theirs.iter().copied().collect();
    for m in a.difference(&b) {
        out.push(Violation::new(axiom, display_set(&sem.set(*m)), format!("{ours_name} but not {theirs_name}")));
    }
    for m in b.difference(&a) {
        out.push(Violation::new(axiom, display_set(&sem.set(*m)), format!("{theirs_name} but not {ours_name}")));
    }
}
