//! Frameworks `(S, R)` and validation of the strength axioms over the
//! instantiated domain.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::argument::{display_set, ArgSet, ArgumentInstance, CoherentSet};
use crate::engine::Semantics;
use crate::error::{Error, Result};
use crate::report::{Axiom, ValidationReport, Violation};
use crate::strength::{Aggregator, AttackKey, Resolution, Slot, StrengthModel, VariantPolicy};

/// Largest framework the bitmask machinery accepts at all.
pub const MAX_ARGUMENTS: usize = 30;

/// Which strength axioms a framework is held to.
///
/// `Restricted` keeps only coherence, positivity and the ban on self attacks:
/// the closure and monotonicity conditions are dropped, which is the setting in
/// which frameworks coincide with group-attack frameworks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomProfile {
    #[default]
    Full,
    Restricted,
}

#[derive(Clone, Debug)]
pub struct Framework {
    arguments: CoherentSet,
    strengths: StrengthModel,
    profile: AxiomProfile,
    slots: Vec<Slot>,
}

impl PartialEq for Framework {
    fn eq(&self, other: &Self) -> bool {
        self.arguments == other.arguments
            && self.strengths == other.strengths
            && self.profile == other.profile
    }
}

impl Eq for Framework {}

impl Framework {
    pub fn new(arguments: CoherentSet, mut strengths: StrengthModel) -> Self {
        let slots = arguments.iter().map(|a| strengths.intern_instance(a)).collect();
        Self { arguments, strengths, profile: AxiomProfile::Full, slots }
    }

    /// A framework held only to the restricted axiom profile.
    pub fn restricted(arguments: CoherentSet, strengths: StrengthModel) -> Self {
        Self { profile: AxiomProfile::Restricted, ..Self::new(arguments, strengths) }
    }

    /// Checks coherence of `arguments` and builds the framework without
    /// validating the strength axioms.
    pub fn from_parts(arguments: ArgSet, strengths: StrengthModel) -> Result<Self> {
        Ok(Self::new(CoherentSet::new(arguments)?, strengths))
    }

    /// Builds the framework and rejects it unless [`validate_axioms`](Self::validate_axioms) passes.
    pub fn checked(arguments: CoherentSet, strengths: StrengthModel) -> Result<Self> {
        Self::new(arguments, strengths).validated()
    }

    pub fn validated(self) -> Result<Self> {
        let report = self.validate_axioms();
        if report.ok {
            Ok(self)
        } else {
            Err(Error::Validation(report))
        }
    }

    pub fn with_profile(mut self, profile: AxiomProfile) -> Self {
        self.profile = profile;
        self
    }

    pub fn with_variant_policy(mut self, policy: VariantPolicy) -> Self {
        self.strengths.set_variant_policy(policy);
        self
    }

    pub fn arguments(&self) -> &CoherentSet {
        &self.arguments
    }

    pub fn strengths(&self) -> &StrengthModel {
        &self.strengths
    }

    pub fn profile(&self) -> AxiomProfile {
        self.profile
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Memoising evaluator for the set-level semantics, with default settings.
    pub fn semantics(&self) -> Semantics<'_> {
        Semantics::new(self)
    }

    /// The member of `S` with identifier `id`.
    pub fn argument(&self, id: &str) -> Result<&ArgumentInstance> {
        self.arguments.get(id).ok_or_else(|| Error::UnknownArgument(id.to_string()))
    }

    /// Resolves a list of identifiers to the full-capacity members of `S`.
    pub fn set_of_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<ArgSet> {
        ids.iter().map(|i| self.argument(i.as_ref()).cloned()).collect()
    }

    pub(crate) fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub(crate) fn index_of(&self, a: &ArgumentInstance) -> Option<usize> {
        self.arguments.iter().position(|m| m == a)
    }

    pub(crate) fn mask_of(&self, set: &ArgSet) -> Result<u32> {
        if self.len() > MAX_ARGUMENTS {
            return Err(Error::SizeLimitExceeded { size: self.len(), limit: MAX_ARGUMENTS });
        }
        let mut mask = 0u32;
        for a in set {
            let i = self.index_of(a).ok_or_else(|| Error::UnknownArgument(a.to_string()))?;
            mask |= 1 << i;
        }
        Ok(mask)
    }

    pub(crate) fn set_of(&self, mask: u32) -> ArgSet {
        self.arguments
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, a)| a.clone())
            .collect()
    }

    /// Checks the strength axioms exhaustively over the instantiated domain:
    /// the members of `S`, every argument mentioned by a listed entry, and
    /// every reduced-capacity variant that occurs among the intrinsic
    /// arguments of a conflict-eliminable subset of `S`.
    pub fn validate_axioms(&self) -> ValidationReport {
        let mut out = Violations::default();
        self.check_entries(&mut out);
        if self.profile == AxiomProfile::Restricted {
            return out.finish();
        }
        let domain = self.instantiated_domain();
        for &target in &domain {
            self.check_target(&domain, target, &mut out);
        }
        out.finish()
    }

    fn check_entries(&self, out: &mut Violations) {
        for (key, strength) in self.strengths.entries() {
            if key.attackers.is_empty() {
                out.push(Axiom::Coherence, key.to_string(), "attack listed with an empty attacker set");
            }
            if key.attackers.contains(&key.target) {
                out.push(Axiom::NoSelfAttacks, key.to_string(), "target is among its attackers");
            } else if key.attackers.iter().any(|a| a.id == key.target.id) {
                out.push(Axiom::NoSelfAttacks, key.to_string(), "a variant of the target is among its attackers");
            }
            if *strength == Some(0) {
                out.push(Axiom::PositiveStrength, key.to_string(), "listed strength is 0");
            }
        }
    }

    /// Arguments the semantics can ever query, as interned slots.
    /// Every instance the axioms are checked over: the members of `S`, the
    /// instances of listed entries and the intrinsic variants of every
    /// conflict-eliminable subset.
    pub fn domain(&self) -> ArgSet {
        self.strengths.instances(&self.instantiated_domain())
    }

    pub(crate) fn instantiated_domain(&self) -> Vec<Slot> {
        let mut domain: BTreeSet<Slot> = self.slots.iter().copied().collect();
        for key in self.strengths.entries().keys() {
            for a in key.attackers.iter().chain(std::iter::once(&key.target)) {
                if let Some(s) = self.strengths.slot(a) {
                    domain.insert(s);
                }
            }
        }
        if self.len() <= crate::engine::DEFAULT_LIMIT {
            let engine = Semantics::new(self);
            for mask in 0..(1u32 << self.len()) {
                if let Ok(Some(caps)) = engine.alpha_caps(mask) {
                    for (i, slot) in self.slots.iter().enumerate() {
                        if mask >> i & 1 == 1 && caps[i] > 0 {
                            domain.insert(Slot { id: slot.id, cap: caps[i] });
                        }
                    }
                }
            }
        }
        domain.into_iter().collect()
    }

    fn check_target(&self, domain: &[Slot], target: Slot, out: &mut Violations) {
        let model = &self.strengths;
        let resolve = |attackers: &[Slot], t: Slot| {
            let mut sorted = attackers.to_vec();
            sorted.sort_unstable();
            model.resolve_slots(&sorted, t)
        };
        let singles: Vec<Slot> =
            domain.iter().copied().filter(|s| s.id != target.id).collect();
        let mut probes: BTreeSet<Vec<Slot>> = singles.iter().map(|&s| vec![s]).collect();
        let tgt = model.instance(target);
        for key in model.entries().keys().filter(|k| k.target == tgt) {
            let mut p: Vec<Slot> = key.attackers.iter().filter_map(|a| model.slot(a)).collect();
            p.sort_unstable();
            probes.insert(p);
        }
        let base_probes = probes.clone();
        let resolving_singles: Vec<Slot> = singles
            .iter()
            .copied()
            .filter(|&s| resolve(&[s], target).value().is_some())
            .collect();
        if model.aggregator() != Aggregator::ExplicitOnly && resolving_singles.len() <= 12 {
            for mask in 1u32..(1 << resolving_singles.len()) {
                if mask.count_ones() < 2 {
                    continue;
                }
                let p: Vec<Slot> = (0..resolving_singles.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| resolving_singles[i])
                    .collect();
                if id_unique(&p) {
                    probes.insert(p);
                }
            }
        }

        let mut resolving: Vec<(Vec<Slot>, u32)> = Vec::new();
        for p in &probes {
            let Some(value) = resolve(p, target).value() else { continue };
            let witness = || self.key_string(p, target);
            if p.len() > 1 {
                for skip in 0..p.len() {
                    let sub: Vec<Slot> =
                        p.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, s)| *s).collect();
                    match resolve(&sub, target) {
                        Resolution::Undefined => out.push(
                            Axiom::QuasiClosure,
                            witness(),
                            format!("subset {} does not resolve", self.key_string(&sub, target)),
                        ),
                        r => {
                            if let Some(v) = r.value().filter(|v| *v > value) {
                                out.push(
                                    Axiom::SubsetMonotonicity,
                                    witness(),
                                    format!(
                                        "subset {} has strength {v} above the set's {value}",
                                        self.key_string(&sub, target)
                                    ),
                                );
                            }
                        }
                    }
                }
            }
            for (pos, member) in p.iter().enumerate() {
                for raised in domain.iter().filter(|d| d.id == member.id && d.cap > member.cap) {
                    let mut q = p.clone();
                    q[pos] = *raised;
                    self.check_raise(resolve(&q, target), value, Axiom::SourceMonotonicity, &q, target, witness(), out);
                }
            }
            if p.iter().all(|a| a.id != target.id) {
                for raised in domain.iter().filter(|d| d.id == target.id && d.cap > target.cap) {
                    self.check_raise(resolve(p, *raised), value, Axiom::TargetMonotonicity, p, *raised, witness(), out);
                }
            }
            resolving.push((p.clone(), value));
        }

        // union closure over pairs of resolving singletons and listed entries
        let pairable: Vec<&Vec<Slot>> =
            resolving.iter().map(|(p, _)| p).filter(|p| base_probes.contains(*p)).collect();
        for (i, a) in pairable.iter().enumerate() {
            for b in pairable.iter().skip(i + 1) {
                let mut u: Vec<Slot> = a.iter().chain(b.iter()).copied().collect();
                u.sort_unstable();
                u.dedup();
                if id_unique(&u) && resolve(&u, target) == Resolution::Undefined {
                    out.push(
                        Axiom::UnionClosure,
                        self.key_string(&u, target),
                        format!(
                            "{} and {} resolve but their union does not",
                            self.key_string(a, target),
                            self.key_string(b, target)
                        ),
                    );
                }
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn check_raise(
        &self,
        raised: Resolution,
        value: u32,
        axiom: Axiom,
        attackers: &[Slot],
        target: Slot,
        witness: String,
        out: &mut Violations,
    ) {
        match raised {
            Resolution::Undefined => out.push(
                axiom,
                witness,
                format!("raised capacity {} is undefined", self.key_string(attackers, target)),
            ),
            Resolution::Missing => {}
            r => {
                if let Some(v) = r.value().filter(|v| *v < value) {
                    out.push(
                        axiom,
                        witness,
                        format!(
                            "raised capacity {} drops strength from {value} to {v}",
                            self.key_string(attackers, target)
                        ),
                    );
                }
            }
        }
    }

    fn key_string(&self, attackers: &[Slot], target: Slot) -> String {
        AttackKey::new(self.strengths.instances(attackers), self.strengths.instance(target)).to_string()
    }
}

fn id_unique(p: &[Slot]) -> bool {
    p.windows(2).all(|w| w[0].id != w[1].id)
}

#[derive(Default)]
struct Violations {
    seen: BTreeMap<(Axiom, String), Violation>,
}

impl Violations {
    fn push(&mut self, axiom: Axiom, witness: impl Into<String>, message: impl Into<String>) {
        let witness = witness.into();
        self.seen
            .entry((axiom, witness.clone()))
            .or_insert_with(|| Violation::new(axiom, witness, message));
    }

    fn finish(self) -> ValidationReport {
        ValidationReport::from_violations(self.seen.into_values().collect())
    }
}

/// Shorthand for tests and examples: `(id, capacity)` pairs to a framework.
pub fn framework(arguments: &[(&str, u32)], strengths: StrengthModel) -> Result<Framework> {
    let set: ArgSet = arguments.iter().map(|(i, c)| ArgumentInstance::new(*i, *c)).collect();
    if set.len() != arguments.len() {
        return Err(Error::PreconditionUnmet(format!("repeated argument in {}", display_set(&set))));
    }
    Framework::from_parts(set, strengths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strength::VariantPolicy;

    fn model() -> StrengthModel {
        StrengthModel::new(Aggregator::Max, VariantPolicy::Persist)
    }

    #[test]
    fn self_attack_entry_is_reported() {
        let fw = framework(&[("a1", 4)], model().with(("a1", 4), ("a1", 4), 1)).unwrap();
        let report = fw.validate_axioms();
        assert!(report.has(Axiom::NoSelfAttacks), "{report}");
    }

    #[test]
    fn subset_monotonicity_violation_is_reported() {
        let m = model()
            .with(("x", 5), ("s", 5), 3)
            .with(("y", 5), ("s", 5), 1)
            .with_group(&[("x", 5), ("y", 5)], ("s", 5), 1);
        let fw = framework(&[("x", 5), ("y", 5), ("s", 5)], m).unwrap();
        let report = fw.validate_axioms();
        assert!(report.has(Axiom::SubsetMonotonicity), "{report}");
        assert!(report.violations.iter().any(|v| v.witness == "({(x,5),(y,5)}, (s,5))"));
    }

    #[test]
    fn quasi_closure_violation_is_reported() {
        let m = StrengthModel::new(Aggregator::ExplicitOnly, VariantPolicy::Strict)
            .with_group(&[("x", 5), ("y", 5)], ("s", 5), 2);
        let fw = framework(&[("x", 5), ("y", 5), ("s", 5)], m).unwrap();
        let report = fw.validate_axioms();
        assert!(report.has(Axiom::QuasiClosure), "{report}");
        // the restricted profile drops the closure conditions
        assert!(fw.with_profile(AxiomProfile::Restricted).validate_axioms().ok);
    }

    #[test]
    fn union_closure_violation_is_reported() {
        let m = StrengthModel::new(Aggregator::ExplicitOnly, VariantPolicy::Strict)
            .with(("x", 5), ("s", 5), 1)
            .with(("y", 5), ("s", 5), 1);
        let fw = framework(&[("x", 5), ("y", 5), ("s", 5)], m).unwrap();
        assert!(fw.validate_axioms().has(Axiom::UnionClosure));
    }

    #[test]
    fn source_monotonicity_violation_is_reported() {
        // (x,2) attacks s but the listed (x,5) does not
        let m = StrengthModel::new(Aggregator::Max, VariantPolicy::Strict)
            .with(("x", 2), ("s", 5), 1);
        let fw = framework(&[("x", 5), ("s", 5)], m).unwrap();
        assert!(fw.validate_axioms().has(Axiom::SourceMonotonicity));
    }

    #[test]
    fn target_monotonicity_violation_is_reported() {
        let m = StrengthModel::new(Aggregator::Max, VariantPolicy::Strict)
            .with(("x", 5), ("s", 5), 1)
            .with(("x", 5), ("s", 2), 2);
        let fw = framework(&[("x", 5), ("s", 5)], m).unwrap();
        assert!(fw.validate_axioms().has(Axiom::TargetMonotonicity));
    }

    #[test]
    fn zero_strength_is_reported() {
        let fw = framework(&[("x", 5), ("s", 5)], model().with(("x", 5), ("s", 5), 0)).unwrap();
        assert!(fw.validate_axioms().has(Axiom::PositiveStrength));
    }

    #[test]
    fn attack_free_framework_is_valid() {
        let fw = framework(&[("x", 1), ("y", 1)], model()).unwrap();
        assert!(fw.validate_axioms().ok);
    }

    #[test]
    fn masks_round_trip() {
        let fw = framework(&[("a", 1), ("b", 2), ("c", 3)], model()).unwrap();
        let set = fw.set_of_ids(&["a", "c"]).unwrap();
        let mask = fw.mask_of(&set).unwrap();
        assert_eq!(mask, 0b101);
        assert_eq!(fw.set_of(mask), set);
        assert!(matches!(fw.set_of_ids(&["zz"]), Err(Error::UnknownArgument(_))));
    }
}
