//! Memoised evaluator behind the set-level semantics.
//!
//! Subsets of `S` are bitmasks over the canonical member order. Everything a
//! coalition needs (conflict-eliminability, intrinsic capacities, what it
//! c-attacks and c-defeats, its defence status) is computed once per mask and
//! cached.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::argument::{display_set, ArgSet, ArgumentInstance};
use crate::error::{Error, Result};
use crate::framework::{Framework, MAX_ARGUMENTS};
use crate::strength::{Resolution, Slot, StrengthModel};

/// Default bound on `|S|` for exhaustive enumeration.
pub const DEFAULT_LIMIT: usize = 16;

/// Which attacker base the fewer-attackers criterion uses when two
/// unrelated sets are compared.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AttackerBase {
    /// Each set is measured against its own attackers.
    #[default]
    Own,
    /// Both sets are measured against the attackers of the coalition the
    /// comparison is made for.
    Shared,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub enumeration_limit: usize,
    pub attacker_base: AttackerBase,
}

impl Default for Config {
    fn default() -> Self {
        Self { enumeration_limit: DEFAULT_LIMIT, attacker_base: AttackerBase::Own }
    }
}

/// Per-coalition facts. Fields other than `ce` are meaningful only when `ce` holds.
#[derive(Clone, Debug)]
pub(crate) struct Facts {
    pub ce: bool,
    /// Intrinsic capacity per member index, 0 outside the coalition.
    pub alpha: Vec<u32>,
    /// Externals (members of `S` outside the coalition) it c-attacks.
    pub c_attacked: u32,
    /// Externals it c-defeats.
    pub c_defeated: u32,
    pub c_admissible: bool,
    pub one_directional: bool,
}

pub struct Semantics<'a> {
    pub(crate) fw: &'a Framework,
    pub(crate) config: Config,
    pub(crate) n: usize,
    pub(crate) caps: Vec<u32>,
    index_by_id: HashMap<u32, usize>,
    /// `single[t][x]`: resolution of `R({x}, t)` for members `x`, `t`.
    single: Vec<Vec<Resolution>>,
    /// `attacks_on[t]`: members whose singleton attacks `t`.
    pub(crate) attacks_on: Vec<u32>,
    /// Listed attacks among members of `S`: per target, (attacker mask, strength).
    groups: Vec<Vec<(u32, u32)>>,
    facts: Mutex<HashMap<u32, Arc<Facts>>>,
    pub(crate) max_cache: Mutex<HashMap<u32, Arc<Vec<u32>>>>,
}

impl<'a> Semantics<'a> {
    pub fn new(fw: &'a Framework) -> Self {
        Self::with_config(fw, Config::default())
    }

    pub fn with_config(fw: &'a Framework, config: Config) -> Self {
        let slots = fw.slots();
        let n = slots.len();
        let model = fw.strengths();
        let index_by_id = slots.iter().enumerate().map(|(i, s)| (s.id, i)).collect();
        let mut single = vec![vec![Resolution::Undefined; n]; n];
        let mut attacks_on = vec![0u32; n];
        for t in 0..n {
            for x in 0..n {
                if x == t {
                    continue;
                }
                let r = model.resolve_slots(&[slots[x]], slots[t]);
                if r.value().is_some() && n <= 32 {
                    attacks_on[t] |= 1 << x;
                }
                single[t][x] = r;
            }
        }
        let mut groups = vec![Vec::new(); n];
        for (key, value) in model.entries() {
            let (Some(v), Some(t)) = (value, fw.index_of(&key.target)) else { continue };
            let mut mask = 0u32;
            let mut all_members = true;
            for a in &key.attackers {
                match fw.index_of(a) {
                    Some(i) if n <= 32 => mask |= 1 << i,
                    _ => all_members = false,
                }
            }
            if all_members && mask & (1 << t) == 0 {
                groups[t].push((mask, *v));
            }
        }
        Self {
            fw,
            config,
            n,
            caps: slots.iter().map(|s| s.cap).collect(),
            index_by_id,
            single,
            attacks_on,
            groups,
            facts: Mutex::new(HashMap::new()),
            max_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn framework(&self) -> &'a Framework {
        self.fw
    }

    pub fn config(&self) -> Config {
        self.config
    }

    pub(crate) fn model(&self) -> &'a StrengthModel {
        self.fw.strengths()
    }

    pub(crate) fn full(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    /// Fails unless exhaustive enumeration over `S` is within the configured bound.
    pub(crate) fn check_limit(&self) -> Result<()> {
        let limit = self.config.enumeration_limit.min(MAX_ARGUMENTS);
        if self.n > limit {
            return Err(Error::SizeLimitExceeded { size: self.n, limit });
        }
        Ok(())
    }

    pub(crate) fn mask(&self, set: &ArgSet) -> Result<u32> {
        self.fw.mask_of(set)
    }

    pub(crate) fn set(&self, mask: u32) -> ArgSet {
        self.fw.set_of(mask)
    }

    pub(crate) fn slot(&self, i: usize) -> Slot {
        self.fw.slots()[i]
    }

    pub(crate) fn index_of_id(&self, id: u32) -> Option<usize> {
        self.index_by_id.get(&id).copied()
    }

    pub(crate) fn members(mask: u32) -> impl Iterator<Item = usize> {
        (0..32).filter(move |i| mask >> i & 1 == 1)
    }

    fn value(&self, r: Resolution, attackers: &[Slot], target: Slot) -> Result<Option<u32>> {
        match r {
            Resolution::Missing => Err(self.model().missing(attackers, target)),
            r => Ok(r.value()),
        }
    }

    pub(crate) fn resolve(&self, attackers: &[Slot], target: Slot) -> Result<Option<u32>> {
        let mut sorted = attackers.to_vec();
        sorted.sort_unstable();
        self.value(self.model().resolve_slots(&sorted, target), &sorted, target)
    }

    pub(crate) fn resolve_instances(&self, attackers: &[&ArgumentInstance], target: &ArgumentInstance) -> Result<Option<u32>> {
        let model = self.model();
        let Some(t) = model.slot(target) else { return Ok(None) };
        let mut slots = Vec::with_capacity(attackers.len());
        for a in attackers {
            match model.slot(a) {
                Some(s) => slots.push(s),
                None => return Ok(None),
            }
        }
        self.resolve(&slots, t)
    }

    /// `R({x}, t)` for members.
    pub(crate) fn single(&self, x: usize, t: usize) -> Result<Option<u32>> {
        self.value(self.single[t][x], &[self.slot(x)], self.slot(t))
    }

    /// `V^max(mask, t)` for a member `t`.
    pub(crate) fn vmax_at(&self, mask: u32, t: usize) -> Result<u32> {
        let mask = mask & !(1 << t);
        let mut best = 0;
        let mut resolving = Vec::new();
        for x in Self::members(mask) {
            if let Some(v) = self.single(x, t)? {
                best = best.max(v);
                resolving.push(self.slot(x));
            }
        }
        if resolving.len() > 1 {
            if let Some(v) = self.resolve(&resolving, self.slot(t))? {
                best = best.max(v);
            }
        }
        for &(g, v) in &self.groups[t] {
            if g & !mask == 0 {
                best = best.max(v);
            }
        }
        Ok(best)
    }

    /// The intrinsic argument of member `i` within coalition `mask`.
    pub(crate) fn alpha_slot(&self, facts: &Facts, i: usize) -> Slot {
        Slot { id: self.slot(i).id, cap: facts.alpha[i] }
    }

    /// Intrinsic capacities, or `None` when `mask` is not conflict-eliminable.
    pub(crate) fn alpha_caps(&self, mask: u32) -> Result<Option<Vec<u32>>> {
        let mut caps = vec![0; self.n];
        for t in Self::members(mask) {
            let v = self.vmax_at(mask, t)?;
            if v >= self.caps[t] {
                return Ok(None);
            }
            caps[t] = self.caps[t] - v;
        }
        Ok(Some(caps))
    }

    pub(crate) fn facts(&self, mask: u32) -> Result<Arc<Facts>> {
        if let Some(f) = self.facts.lock().expect("facts cache poisoned").get(&mask) {
            return Ok(f.clone());
        }
        let f = Arc::new(self.compute_facts(mask)?);
        self.facts.lock().expect("facts cache poisoned").insert(mask, f.clone());
        Ok(f)
    }

    pub(crate) fn is_ce(&self, mask: u32) -> Result<bool> {
        Ok(self.facts(mask)?.ce)
    }

    /// Strongest view strength of a subset of `attackers` against `target`,
    /// skipping attacker sets removed from the view of `coalition` (those whose
    /// identifiers all lie in the coalition when the target's does too).
    ///
    /// `attackers` must be identifier-unique. Candidate subsets are the
    /// singletons, the set of all resolving singletons, and the projections of
    /// listed entries onto `attackers`; on a framework satisfying the axioms
    /// this reaches the maximum over all subsets.
    pub(crate) fn strongest(
        &self,
        attackers: &[Slot],
        target: Slot,
        coalition_ids: Option<&[u32]>,
    ) -> Result<Option<(u32, Vec<Slot>)>> {
        let removed = |set: &[Slot]| match coalition_ids {
            Some(ids) => ids.contains(&target.id) && set.iter().all(|a| ids.contains(&a.id)),
            None => false,
        };
        let mut best: Option<(u32, Vec<Slot>)> = None;
        let mut consider = |set: Vec<Slot>, v: u32| {
            if best.as_ref().is_none_or(|(b, w)| v > *b || (v == *b && set.len() < w.len())) {
                best = Some((v, set));
            }
        };
        let mut resolving = Vec::new();
        for &a in attackers {
            if removed(&[a]) {
                continue;
            }
            if let Some(v) = self.resolve(&[a], target)? {
                resolving.push(a);
                consider(vec![a], v);
            }
        }
        if resolving.len() > 1 && !removed(&resolving) {
            if let Some(v) = self.resolve(&resolving, target)? {
                consider(resolving.clone(), v);
            }
        }
        for set in self.projections(attackers, target) {
            if set.len() > 1 && !removed(&set) {
                if let Some(v) = self.resolve(&set, target)? {
                    consider(set, v);
                }
            }
        }
        Ok(best)
    }

    /// Subsets of `attackers` carrying exactly the identifiers of some listed
    /// entry against `target`'s identifier.
    pub(crate) fn projections(&self, attackers: &[Slot], target: Slot) -> Vec<Vec<Slot>> {
        let mut out = Vec::new();
        for sig in self.model().entry_signatures(target.id) {
            let set: Option<Vec<Slot>> =
                sig.iter().map(|id| attackers.iter().find(|a| a.id == *id).copied()).collect();
            if let Some(set) = set {
                out.push(set);
            }
        }
        out
    }

    fn compute_facts(&self, mask: u32) -> Result<Facts> {
        let Some(alpha) = self.alpha_caps(mask)? else {
            return Ok(Facts {
                ce: false,
                alpha: vec![0; self.n],
                c_attacked: 0,
                c_defeated: 0,
                c_admissible: false,
                one_directional: false,
            });
        };
        let mut facts = Facts {
            ce: true,
            alpha,
            c_attacked: 0,
            c_defeated: 0,
            c_admissible: false,
            one_directional: false,
        };
        let alpha_slots: Vec<Slot> = Self::members(mask).map(|i| self.alpha_slot(&facts, i)).collect();
        let outside = self.full() & !mask;
        for e in Self::members(outside) {
            if let Some((v, _)) = self.strongest(&alpha_slots, self.slot(e), None)? {
                facts.c_attacked |= 1 << e;
                if v >= self.caps[e] {
                    facts.c_defeated |= 1 << e;
                }
            }
        }
        let mut admissible = true;
        let mut one_directional = false;
        for s in Self::members(mask) {
            for externals in self.view_attacks_on(&facts, mask, s)? {
                if externals & facts.c_defeated == 0 {
                    admissible = false;
                }
                if externals & facts.c_attacked == 0 {
                    one_directional = true;
                }
            }
        }
        facts.c_admissible = admissible;
        facts.one_directional = one_directional;
        Ok(facts)
    }

    /// Minimal attacker sets in the view of `mask` against member `s`, each
    /// reduced to its external part (intrinsic members can never be
    /// c-attacked, so only the external part matters to defence).
    fn view_attacks_on(&self, facts: &Facts, mask: u32, s: usize) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        for x in Self::members(self.full() & !mask) {
            if self.single(x, s)?.is_some() {
                out.push(1 << x);
            }
        }
        let target = self.slot(s);
        for sig in self.model().entry_signatures(target.id) {
            if sig.len() < 2 {
                continue;
            }
            let mut set = Vec::with_capacity(sig.len());
            let mut externals = 0u32;
            for id in sig.iter() {
                let Some(i) = self.index_of_id(*id) else { break };
                if mask >> i & 1 == 1 {
                    set.push(self.alpha_slot(facts, i));
                } else {
                    set.push(self.slot(i));
                    externals |= 1 << i;
                }
            }
            if set.len() != sig.len() || externals == 0 {
                continue;
            }
            if self.resolve(&set, target)?.is_some() {
                out.push(externals);
            }
        }
        Ok(out)
    }

    pub(crate) fn c_admissible(&self, mask: u32) -> Result<bool> {
        let f = self.facts(mask)?;
        Ok(f.ce && f.c_admissible)
    }

    pub(crate) fn one_directional(&self, mask: u32) -> Result<bool> {
        let f = self.facts(mask)?;
        if !f.ce {
            return Err(Error::NotConflictEliminable(display_set(&self.set(mask))));
        }
        Ok(f.one_directional)
    }

    /// `S1 c-defeats s` for a member `s` of `S`.
    pub(crate) fn c_defeats_at(&self, mask: u32, s: usize) -> Result<bool> {
        let f = self.facts(mask)?;
        Ok(f.ce && f.c_defeated >> s & 1 == 1)
    }

    pub(crate) fn c_attacks_at(&self, mask: u32, s: usize) -> Result<bool> {
        let f = self.facts(mask)?;
        Ok(f.ce && f.c_attacked >> s & 1 == 1)
    }

    pub(crate) fn require_ce(&self, mask: u32) -> Result<Arc<Facts>> {
        let f = self.facts(mask)?;
        if !f.ce {
            return Err(Error::NotConflictEliminable(display_set(&self.set(mask))));
        }
        Ok(f)
    }

    /// All conflict-eliminable masks, ascending.
    pub(crate) fn ce_masks(&self) -> Result<Vec<u32>> {
        self.check_limit()?;
        let mut out = Vec::new();
        for m in 0..=self.full() {
            if self.is_ce(m)? {
                out.push(m);
            }
            if m == u32::MAX {
                break;
            }
        }
        Ok(out)
    }

    pub(crate) fn c_admissible_masks(&self) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        for m in self.ce_masks()? {
            if self.c_admissible(m)? {
                out.push(m);
            }
        }
        Ok(out)
    }

    pub(crate) fn c_preferred_masks(&self) -> Result<Vec<u32>> {
        Ok(maximal(&self.c_admissible_masks()?))
    }

    /// Members of `S` whose singleton attacks some member of `mask`.
    pub(crate) fn attacker_mask(&self, mask: u32) -> u32 {
        Self::members(mask).fold(0, |acc, s| acc | self.attacks_on[s])
    }
}

/// The subset-maximal masks of `masks`.
pub(crate) fn maximal(masks: &[u32]) -> Vec<u32> {
    masks
        .iter()
        .copied()
        .filter(|&m| !masks.iter().any(|&o| o != m && o & m == m))
        .collect()
}

/// Sorted list of sets in canonical order.
pub(crate) fn sorted_sets(sem: &Semantics<'_>, masks: &[u32]) -> Vec<ArgSet> {
    let mut sets: Vec<ArgSet> = masks.iter().map(|&m| sem.set(m)).collect();
    sets.sort();
    sets
}
