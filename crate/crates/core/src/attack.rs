//! Attacks, defeats, conflict-eliminable sets, intrinsic arguments, views,
//! c-attacks and c-admissibility.

use std::fmt;

use serde::Serialize;

use crate::argument::{display_set, ArgSet, ArgumentInstance};
use crate::engine::Semantics;
use crate::error::{Error, Result};
use crate::framework::Framework;
use crate::strength::{AttackKey, Slot};

/// `α(S1)`: the members of a conflict-eliminable set with capacities reduced
/// by the strongest internal attack on each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntrinsicSet {
    pub members: ArgSet,
}

impl IntrinsicSet {
    pub fn get(&self, id: &str) -> Option<&ArgumentInstance> {
        self.members.iter().find(|m| m.id == id)
    }
}

impl fmt::Display for IntrinsicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&display_set(&self.members))
    }
}

/// One attack of a view, as a minimal attacker set with its strength.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub attackers: ArgSet,
    pub target: ArgumentInstance,
    pub strength: u32,
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", AttackKey::new(self.attackers.clone(), self.target.clone()), self.strength)
    }
}

/// The view a coalition has of the framework: externals plus its intrinsic
/// arguments, with every attack among the coalition's own identifiers removed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct View {
    pub base: ArgSet,
    pub intrinsic: IntrinsicSet,
    pub arguments: ArgSet,
    /// Minimal attacks among the view's arguments.
    pub attacks: Vec<Edge>,
    pub diagnostics: Vec<String>,
}

impl<'a> Semantics<'a> {
    fn member_index(&self, s: &ArgumentInstance) -> Option<usize> {
        self.fw.index_of(s)
    }

    fn slots_of(&self, set: &ArgSet) -> Result<Vec<Slot>> {
        set.iter()
            .map(|a| self.model().slot(a).ok_or_else(|| Error::UnknownArgument(a.to_string())))
            .collect()
    }

    /// `V^max(attackers, s)`. Works for members of `S` and for capacity variants.
    pub fn vmax(&self, attackers: &ArgSet, s: &ArgumentInstance) -> Result<u32> {
        if let (Ok(mask), Some(t)) = (self.mask(attackers), self.member_index(s)) {
            return self.vmax_at(mask, t);
        }
        let Some(target) = self.model().slot(s) else { return Ok(0) };
        let Ok(slots) = self.slots_of(attackers) else {
            // an unknown argument attacks nothing, but the rest of the set may
            let known: ArgSet = attackers.iter().filter(|a| self.model().slot(a).is_some()).cloned().collect();
            return self.vmax(&known, s);
        };
        let unique = slots.windows(2).all(|w| w[0].id != w[1].id)
            && slots.iter().map(|s| s.id).collect::<std::collections::BTreeSet<_>>().len() == slots.len();
        if unique {
            return Ok(self.strongest(&slots, target, None)?.map_or(0, |(v, _)| v));
        }
        if slots.len() > 20 {
            return Err(Error::SizeLimitExceeded { size: slots.len(), limit: 20 });
        }
        let mut best = 0;
        for m in 1u32..(1 << slots.len()) {
            let sub: Vec<Slot> = (0..slots.len()).filter(|i| m >> i & 1 == 1).map(|i| slots[i]).collect();
            if let Some(v) = self.resolve(&sub, target)? {
                best = best.max(v);
            }
        }
        Ok(best)
    }

    pub fn attacks(&self, attackers: &ArgSet, s: &ArgumentInstance) -> Result<bool> {
        Ok(self.vmax(attackers, s)? > 0)
    }

    pub fn defeats(&self, attackers: &ArgSet, s: &ArgumentInstance) -> Result<bool> {
        let v = self.vmax(attackers, s)?;
        Ok(v > 0 && v >= s.capacity)
    }

    pub fn is_conflict_eliminable(&self, set: &ArgSet) -> Result<bool> {
        self.is_ce(self.mask(set)?)
    }

    pub fn intrinsic(&self, set: &ArgSet) -> Result<IntrinsicSet> {
        let mask = self.mask(set)?;
        let facts = self.require_ce(mask)?;
        let members = Self::members(mask)
            .map(|i| self.model().instance(self.alpha_slot(&facts, i)))
            .collect();
        Ok(IntrinsicSet { members })
    }

    pub fn view(&self, set: &ArgSet) -> Result<View> {
        let mask = self.mask(set)?;
        let facts = self.require_ce(mask)?;
        let intrinsic = self.intrinsic(set)?;
        let mut slots: Vec<Slot> = Vec::with_capacity(self.n);
        for i in 0..self.n {
            slots.push(if mask >> i & 1 == 1 { self.alpha_slot(&facts, i) } else { self.slot(i) });
        }
        let ids: Vec<u32> = Self::members(mask).map(|i| self.slot(i).id).collect();
        let attacks = self.edges(&slots, Some(&ids))?;
        let mut diagnostics = Vec::new();
        // attacks the literal deletion would keep: reduced intrinsic arguments
        // still attacking full-capacity members of the coalition
        for s in Self::members(mask) {
            let others: Vec<Slot> = Self::members(mask & !(1 << s))
                .map(|i| self.alpha_slot(&facts, i))
                .filter(|a| self.slot(self.index_of_id(a.id).expect("member")).cap != a.cap)
                .collect();
            for a in others {
                match self.resolve(&[a], self.slot(s)) {
                    Ok(Some(v)) => diagnostics.push(format!(
                        "warning: intrinsic argument {} still attacks coalition member {} with strength {v}; removed from the view",
                        self.model().instance(a),
                        self.model().instance(self.slot(s)),
                    )),
                    Ok(None) => {}
                    Err(e) => diagnostics.push(format!("note: {e}")),
                }
            }
        }
        Ok(View {
            base: set.clone(),
            intrinsic,
            arguments: slots.iter().map(|&s| self.model().instance(s)).collect(),
            attacks,
            diagnostics,
        })
    }

    /// Minimal attacks among `args` (identifier-unique), skipping those
    /// removed from the view of the coalition with identifiers `coalition_ids`.
    pub(crate) fn edges(&self, args: &[Slot], coalition_ids: Option<&[u32]>) -> Result<Vec<Edge>> {
        let removed = |set: &[Slot], target: Slot| match coalition_ids {
            Some(ids) => ids.contains(&target.id) && set.iter().all(|a| ids.contains(&a.id)),
            None => false,
        };
        let mut out = Vec::new();
        for &t in args {
            let others: Vec<Slot> = args.iter().copied().filter(|a| a.id != t.id).collect();
            let mut found: Vec<(Vec<Slot>, u32)> = Vec::new();
            for &a in &others {
                if !removed(&[a], t) {
                    if let Some(v) = self.resolve(&[a], t)? {
                        found.push((vec![a], v));
                    }
                }
            }
            for set in self.projections(&others, t) {
                if set.len() > 1 && !removed(&set, t) {
                    if let Some(v) = self.resolve(&set, t)? {
                        found.push((set, v));
                    }
                }
            }
            for (set, v) in &found {
                let minimal = !found
                    .iter()
                    .any(|(o, _)| o.len() < set.len() && o.iter().all(|x| set.contains(x)));
                if minimal {
                    out.push(Edge {
                        attackers: self.model().instances(set),
                        target: self.model().instance(t),
                        strength: *v,
                    });
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Minimal attacks of the whole framework.
    pub fn framework_edges(&self) -> Result<Vec<Edge>> {
        let slots: Vec<Slot> = (0..self.n).map(|i| self.slot(i)).collect();
        self.edges(&slots, None)
    }

    /// `S1 c-attacks s`. `s` may be a member of `S` or an argument of the
    /// view; members of the coalition and its intrinsic arguments are never
    /// c-attacked.
    pub fn c_attacks(&self, set: &ArgSet, s: &ArgumentInstance) -> Result<bool> {
        Ok(self.c_strength(set, s)?.is_some())
    }

    pub fn c_defeats(&self, set: &ArgSet, s: &ArgumentInstance) -> Result<bool> {
        Ok(self.c_strength(set, s)?.is_some_and(|v| v >= s.capacity))
    }

    /// Strongest view strength of a subset of `α(set)` against `s`.
    fn c_strength(&self, set: &ArgSet, s: &ArgumentInstance) -> Result<Option<u32>> {
        let mask = self.mask(set)?;
        let facts = self.facts(mask)?;
        if !facts.ce {
            return Ok(None);
        }
        let Some(target) = self.model().slot(s) else { return Ok(None) };
        if let Some(t) = self.index_of_id(target.id) {
            if mask >> t & 1 == 1 {
                return Ok(None);
            }
            if self.slot(t) == target {
                let attacked = facts.c_attacked >> t & 1 == 1;
                if !attacked {
                    return Ok(None);
                }
            }
        }
        let alpha: Vec<Slot> = Self::members(mask).map(|i| self.alpha_slot(&facts, i)).collect();
        Ok(self.strongest(&alpha, target, None)?.map(|(v, _)| v))
    }

    pub fn is_c_admissible(&self, set: &ArgSet) -> Result<bool> {
        self.c_admissible(self.mask(set)?)
    }

    pub fn conflict_eliminable_sets(&self) -> Result<Vec<ArgSet>> {
        Ok(crate::engine::sorted_sets(self, &self.ce_masks()?))
    }

    pub fn c_admissible_sets(&self) -> Result<Vec<ArgSet>> {
        Ok(crate::engine::sorted_sets(self, &self.c_admissible_masks()?))
    }

    pub fn c_preferred_sets(&self) -> Result<Vec<ArgSet>> {
        Ok(crate::engine::sorted_sets(self, &self.c_preferred_masks()?))
    }
}

pub fn attacks(fw: &Framework, attackers: &ArgSet, s: &ArgumentInstance) -> Result<bool> {
    fw.semantics().attacks(attackers, s)
}

pub fn vmax(fw: &Framework, attackers: &ArgSet, s: &ArgumentInstance) -> Result<u32> {
    fw.semantics().vmax(attackers, s)
}

pub fn defeats(fw: &Framework, attackers: &ArgSet, s: &ArgumentInstance) -> Result<bool> {
    fw.semantics().defeats(attackers, s)
}

pub fn is_conflict_eliminable(fw: &Framework, set: &ArgSet) -> Result<bool> {
    fw.semantics().is_conflict_eliminable(set)
}

pub fn intrinsic(fw: &Framework, set: &ArgSet) -> Result<IntrinsicSet> {
    fw.semantics().intrinsic(set)
}

pub fn view(fw: &Framework, set: &ArgSet) -> Result<View> {
    fw.semantics().view(set)
}

pub fn c_attacks(fw: &Framework, set: &ArgSet, s: &ArgumentInstance) -> Result<bool> {
    fw.semantics().c_attacks(set, s)
}

pub fn c_defeats(fw: &Framework, set: &ArgSet, s: &ArgumentInstance) -> Result<bool> {
    fw.semantics().c_defeats(set, s)
}

pub fn is_c_admissible(fw: &Framework, set: &ArgSet) -> Result<bool> {
    fw.semantics().is_c_admissible(set)
}

pub fn enumerate_c_preferred(fw: &Framework) -> Result<Vec<ArgSet>> {
    fw.semantics().c_preferred_sets()
}
