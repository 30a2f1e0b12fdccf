//! The attack-strength function: a finite table of listed strengths plus the
//! policies that resolve everything the table leaves implicit.
//!
//! A lookup for `(attackers, target)` resolves in this order:
//!
//! 1. empty attacker sets, and attacker sets sharing an identifier with the
//!    target, are undefined;
//! 2. a listed entry wins (including entries listed as explicitly absent);
//! 3. a group of two or more attackers folds its singleton strengths with the
//!    aggregator (`max` or `sum`), and is undefined if any singleton is;
//! 4. otherwise the query is a capacity variant of listed entries. If no
//!    listed entry with the same identifiers dominates it capacity-wise the
//!    attack is undefined. If one does, `strict` refuses to guess and
//!    `persist` takes the smallest dominating strength.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::argument::{display_set, ArgSet, ArgumentInstance};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Aggregator {
    #[default]
    Max,
    Sum,
    ExplicitOnly,
}

impl fmt::Display for Aggregator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Aggregator::Max => "max",
            Aggregator::Sum => "sum",
            Aggregator::ExplicitOnly => "explicit-only",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VariantPolicy {
    #[default]
    Strict,
    Persist,
}

impl fmt::Display for VariantPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VariantPolicy::Strict => "strict",
            VariantPolicy::Persist => "persist",
        })
    }
}

/// `(attacker set, target)`: the domain of the strength function.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AttackKey {
    pub attackers: ArgSet,
    pub target: ArgumentInstance,
}

impl AttackKey {
    pub fn new(attackers: ArgSet, target: ArgumentInstance) -> Self {
        Self { attackers, target }
    }
}

impl fmt::Display for AttackKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", display_set(&self.attackers), self.target)
    }
}

/// Interned argument: identifier index plus capacity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Slot {
    pub id: u32,
    pub cap: u32,
}

type Key = (Box<[Slot]>, Slot);
type Signature = (Box<[u32]>, u32);

/// How a lookup was resolved, for diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Resolution {
    Undefined,
    Listed(u32),
    Aggregated(u32),
    Defaulted(u32),
    /// A dominating entry exists but the variant is not listed (strict policy).
    Missing,
}

impl Resolution {
    pub fn value(self) -> Option<u32> {
        match self {
            Resolution::Listed(v) | Resolution::Aggregated(v) | Resolution::Defaulted(v) => Some(v),
            Resolution::Undefined | Resolution::Missing => None,
        }
    }
}

/// The strength function `R`.
#[derive(Clone, Debug, Default)]
pub struct StrengthModel {
    aggregator: Aggregator,
    variant_policy: VariantPolicy,
    entries: BTreeMap<AttackKey, Option<u32>>,
    ids: Vec<String>,
    id_index: HashMap<String, u32>,
    exact: HashMap<Key, Option<u32>>,
    by_signature: HashMap<Signature, Vec<(Key, Option<u32>)>>,
    signatures_by_target: HashMap<u32, Vec<Box<[u32]>>>,
}

impl PartialEq for StrengthModel {
    fn eq(&self, other: &Self) -> bool {
        self.aggregator == other.aggregator
            && self.variant_policy == other.variant_policy
            && self.entries == other.entries
    }
}

impl Eq for StrengthModel {}

impl StrengthModel {
    pub fn new(aggregator: Aggregator, variant_policy: VariantPolicy) -> Self {
        Self { aggregator, variant_policy, ..Self::default() }
    }

    pub fn aggregator(&self) -> Aggregator {
        self.aggregator
    }

    pub fn variant_policy(&self) -> VariantPolicy {
        self.variant_policy
    }

    pub fn set_variant_policy(&mut self, policy: VariantPolicy) {
        self.variant_policy = policy;
    }

    /// Listed entries; `None` marks an attack listed as explicitly absent.
    pub fn entries(&self) -> &BTreeMap<AttackKey, Option<u32>> {
        &self.entries
    }

    /// Lists `strength` for `(attackers, target)`, replacing any previous entry.
    pub fn insert(&mut self, attackers: ArgSet, target: ArgumentInstance, strength: u32) {
        self.put(attackers, target, Some(strength));
    }

    /// Lists `(attackers, target)` as explicitly not an attack.
    pub fn insert_absent(&mut self, attackers: ArgSet, target: ArgumentInstance) {
        self.put(attackers, target, None);
    }

    /// Builder form of [`insert`](Self::insert) for single attackers.
    pub fn with(mut self, attacker: (&str, u32), target: (&str, u32), strength: u32) -> Self {
        self.insert(
            [ArgumentInstance::new(attacker.0, attacker.1)].into(),
            ArgumentInstance::new(target.0, target.1),
            strength,
        );
        self
    }

    /// Builder form for group attacks.
    pub fn with_group(mut self, attackers: &[(&str, u32)], target: (&str, u32), strength: u32) -> Self {
        self.insert(
            attackers.iter().map(|(i, c)| ArgumentInstance::new(*i, *c)).collect(),
            ArgumentInstance::new(target.0, target.1),
            strength,
        );
        self
    }

    /// Builder form of [`insert_absent`](Self::insert_absent) for single attackers.
    pub fn without(mut self, attacker: (&str, u32), target: (&str, u32)) -> Self {
        self.insert_absent(
            [ArgumentInstance::new(attacker.0, attacker.1)].into(),
            ArgumentInstance::new(target.0, target.1),
        );
        self
    }

    fn put(&mut self, attackers: ArgSet, target: ArgumentInstance, strength: Option<u32>) {
        let mut slots: Vec<Slot> = attackers.iter().map(|a| self.intern_instance(a)).collect();
        slots.sort_unstable();
        let t = self.intern_instance(&target);
        let key: Key = (slots.into(), t);
        if self.exact.insert(key.clone(), strength).is_some() {
            let sig = signature(&key);
            if let Some(list) = self.by_signature.get_mut(&sig) {
                list.retain(|(k, _)| *k != key);
            }
        }
        let sig = signature(&key);
        let per_target = self.signatures_by_target.entry(sig.1).or_default();
        if !per_target.contains(&sig.0) {
            per_target.push(sig.0.clone());
        }
        self.by_signature.entry(sig).or_default().push((key, strength));
        self.entries.insert(AttackKey::new(attackers, target), strength);
    }

    pub(crate) fn intern(&mut self, id: &str) -> u32 {
        if let Some(&i) = self.id_index.get(id) {
            return i;
        }
        let i = self.ids.len() as u32;
        self.ids.push(id.to_string());
        self.id_index.insert(id.to_string(), i);
        i
    }

    pub(crate) fn intern_instance(&mut self, a: &ArgumentInstance) -> Slot {
        Slot { id: self.intern(&a.id), cap: a.capacity }
    }

    pub(crate) fn slot(&self, a: &ArgumentInstance) -> Option<Slot> {
        self.id_index.get(&a.id).map(|&id| Slot { id, cap: a.capacity })
    }

    pub(crate) fn instance(&self, s: Slot) -> ArgumentInstance {
        ArgumentInstance::new(self.ids[s.id as usize].clone(), s.cap)
    }

    pub(crate) fn instances(&self, slots: &[Slot]) -> ArgSet {
        slots.iter().map(|&s| self.instance(s)).collect()
    }

    /// Attacker identifier sets of listed entries whose target carries `target_id`.
    pub(crate) fn entry_signatures(&self, target_id: u32) -> &[Box<[u32]>] {
        self.signatures_by_target.get(&target_id).map_or(&[], Vec::as_slice)
    }

    /// Looks up `R(attackers, target)`. A strict-mode gap reads as undefined
    /// here; use [`resolve`](Self::resolve) to distinguish it.
    pub fn strength(&self, attackers: &ArgSet, target: &ArgumentInstance) -> Option<u32> {
        self.resolve(attackers, target).ok().flatten()
    }

    /// Looks up `R(attackers, target)`, failing when the strict variant policy
    /// meets an unlisted capacity variant of a listed attack.
    pub fn resolve(&self, attackers: &ArgSet, target: &ArgumentInstance) -> crate::Result<Option<u32>> {
        let Some(t) = self.slot(target) else { return Ok(None) };
        let mut slots = Vec::with_capacity(attackers.len());
        for a in attackers {
            match self.slot(a) {
                Some(s) => slots.push(s),
                None => return Ok(None),
            }
        }
        slots.sort_unstable();
        match self.resolve_slots(&slots, t) {
            Resolution::Missing => Err(self.missing(&slots, t)),
            r => Ok(r.value()),
        }
    }

    pub(crate) fn missing(&self, attackers: &[Slot], target: Slot) -> crate::Error {
        crate::Error::MissingVariantStrength {
            attackers: display_set(&self.instances(attackers)),
            target: self.instance(target).to_string(),
        }
    }

    /// Core lookup over interned arguments; `attackers` must be sorted.
    pub(crate) fn resolve_slots(&self, attackers: &[Slot], target: Slot) -> Resolution {
        if attackers.is_empty() || attackers.iter().any(|a| a.id == target.id) {
            return Resolution::Undefined;
        }
        let key: Key = (attackers.into(), target);
        if let Some(v) = self.exact.get(&key) {
            return match v {
                Some(v) => Resolution::Listed(*v),
                None => Resolution::Undefined,
            };
        }
        if attackers.len() > 1 && self.aggregator != Aggregator::ExplicitOnly {
            let mut acc = 0u32;
            let mut defaulted = false;
            let mut missing = false;
            for &a in attackers {
                let r = self.resolve_slots(&[a], target);
                let v = match r {
                    // an undefined member settles the group whatever the gap says
                    Resolution::Undefined => return Resolution::Undefined,
                    Resolution::Missing => {
                        missing = true;
                        continue;
                    }
                    Resolution::Defaulted(v) => {
                        defaulted = true;
                        v
                    }
                    Resolution::Listed(v) | Resolution::Aggregated(v) => v,
                };
                acc = match self.aggregator {
                    Aggregator::Sum => acc.saturating_add(v),
                    _ => acc.max(v),
                };
            }
            return match (missing, defaulted) {
                (true, _) => Resolution::Missing,
                (false, true) => Resolution::Defaulted(acc),
                (false, false) => Resolution::Aggregated(acc),
            };
        }
        self.resolve_variant(&key)
    }

    fn resolve_variant(&self, key: &Key) -> Resolution {
        let Some(candidates) = self.by_signature.get(&signature(key)) else {
            return Resolution::Undefined;
        };
        let (attackers, target) = key;
        let mut best: Option<u32> = None;
        let mut dominated = false;
        for ((cand_attackers, cand_target), value) in candidates {
            let dominates = cand_target.cap >= target.cap
                && cand_attackers.iter().zip(attackers.iter()).all(|(c, q)| c.cap >= q.cap);
            if !dominates {
                continue;
            }
            dominated = true;
            match value {
                // an absent attack at higher capacity forces absence below it
                None => return Resolution::Undefined,
                Some(v) => best = Some(best.map_or(*v, |b| b.min(*v))),
            }
        }
        match (dominated, self.variant_policy, best) {
            (false, _, _) => Resolution::Undefined,
            (true, VariantPolicy::Strict, _) => Resolution::Missing,
            (true, VariantPolicy::Persist, Some(v)) => Resolution::Defaulted(v),
            (true, VariantPolicy::Persist, None) => Resolution::Undefined,
        }
    }
}

fn signature(key: &Key) -> Signature {
    (key.0.iter().map(|s| s.id).collect(), key.1.id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::argument::arg_set;

    fn inst(id: &str, c: u32) -> ArgumentInstance {
        ArgumentInstance::new(id, c)
    }

    fn running(aggregator: Aggregator) -> StrengthModel {
        StrengthModel::new(aggregator, VariantPolicy::Strict)
            .with(("a1", 4), ("a3", 5), 3)
            .with(("a3", 5), ("a1", 4), 3)
            .with(("a2", 3), ("a3", 5), 1)
    }

    #[test]
    fn listed_strength() {
        let m = running(Aggregator::Sum);
        assert_eq!(m.strength(&arg_set([("a1", 4)]), &inst("a3", 5)), Some(3));
    }

    #[test]
    fn empty_attackers_undefined() {
        let m = running(Aggregator::Sum);
        assert_eq!(m.strength(&ArgSet::new(), &inst("a3", 5)), None);
    }

    #[test]
    fn target_among_attackers_undefined() {
        let m = running(Aggregator::Max).with(("a1", 4), ("a1", 4), 2);
        assert_eq!(m.strength(&arg_set([("a1", 4)]), &inst("a1", 4)), None);
        assert_eq!(m.strength(&arg_set([("a1", 4), ("a3", 5)]), &inst("a1", 4)), None);
    }

    #[test]
    fn sum_and_max_fold_singletons() {
        let group = arg_set([("a1", 4), ("a2", 3)]);
        assert_eq!(running(Aggregator::Sum).strength(&group, &inst("a3", 5)), Some(4));
        assert_eq!(running(Aggregator::Max).strength(&group, &inst("a3", 5)), Some(3));
        assert_eq!(running(Aggregator::ExplicitOnly).strength(&group, &inst("a3", 5)), None);
    }

    #[test]
    fn group_with_a_non_attacker_is_undefined() {
        let group = arg_set([("a1", 4), ("a4", 1)]);
        assert_eq!(running(Aggregator::Sum).strength(&group, &inst("a3", 5)), None);
    }

    #[test]
    fn explicit_group_overrides_aggregator() {
        let m = running(Aggregator::Sum).with_group(&[("a1", 4), ("a2", 3)], ("a3", 5), 3);
        assert_eq!(m.strength(&arg_set([("a1", 4), ("a2", 3)]), &inst("a3", 5)), Some(3));
    }

    #[test]
    fn strict_policy_refuses_unlisted_variant() {
        let m = running(Aggregator::Sum);
        let err = m.resolve(&arg_set([("a3", 2)]), &inst("a1", 4)).unwrap_err();
        assert!(matches!(err, crate::Error::MissingVariantStrength { .. }));
        // nothing dominates (a1,1) -> (a2,3): certainly undefined, not missing
        assert_eq!(m.resolve(&arg_set([("a1", 1)]), &inst("a2", 3)).unwrap(), None);
    }

    #[test]
    fn persist_policy_takes_nearest_dominating_strength() {
        let mut m = running(Aggregator::Sum);
        m.set_variant_policy(VariantPolicy::Persist);
        assert_eq!(m.strength(&arg_set([("a3", 2)]), &inst("a1", 4)), Some(3));
        assert_eq!(m.strength(&arg_set([("a3", 5)]), &inst("a1", 1)), Some(3));
        let m = m.with(("a3", 3), ("a1", 4), 2);
        assert_eq!(m.strength(&arg_set([("a3", 2)]), &inst("a1", 4)), Some(2));
        // raising above every listed capacity is not defaulted
        assert_eq!(m.strength(&arg_set([("a3", 9)]), &inst("a1", 4)), None);
    }

    #[test]
    fn absent_entry_forces_absence_below() {
        let m = running(Aggregator::Sum).without(("a3", 2), ("a1", 4));
        assert_eq!(m.resolve(&arg_set([("a3", 2)]), &inst("a1", 4)).unwrap(), None);
        assert_eq!(m.resolve(&arg_set([("a3", 1)]), &inst("a1", 4)).unwrap(), None);
        assert!(m.resolve(&arg_set([("a3", 3)]), &inst("a1", 4)).is_err());
    }

    #[test]
    fn unknown_identifiers_are_undefined() {
        let m = running(Aggregator::Sum);
        assert_eq!(m.strength(&arg_set([("zz", 1)]), &inst("a3", 5)), None);
    }
}
