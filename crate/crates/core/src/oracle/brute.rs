//! Reference semantics by raw quantifier expansion.
//!
//! Every relation is transcribed from its definition over explicit subsets,
//! using nothing but strength lookups. Nothing here is shared with the
//! optimised evaluator beyond the strength function itself, so agreement
//! between the two is meaningful.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::argument::{display_set, ArgSet, ArgumentInstance};
use crate::coalition::{Criterion, Formability, StateRank};
use crate::engine::AttackerBase;
use crate::error::{Error, Result};
use crate::framework::Framework;

/// Largest `|S|` the reference semantics accept.
pub const BRUTE_LIMIT: usize = 8;

struct Facts {
    alpha: Option<ArgSet>,
    /// Arguments of the view; empty when `alpha` is undefined.
    view: ArgSet,
    c_attacked: ArgSet,
    c_defeated: ArgSet,
    c_admissible: bool,
    one_directional: bool,
}

pub struct Brute<'a> {
    fw: &'a Framework,
    members: Vec<ArgumentInstance>,
    base: AttackerBase,
    facts: RefCell<HashMap<ArgSet, Rc<Facts>>>,
    max: RefCell<HashMap<ArgSet, Rc<Vec<ArgSet>>>>,
    attackers: RefCell<HashMap<ArgSet, ArgSet>>,
}

/// All subsets of `items`, the empty set included.
fn subsets(items: &[ArgumentInstance]) -> impl Iterator<Item = ArgSet> + '_ {
    (0u32..1 << items.len()).map(move |m| {
        items.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, a)| a.clone()).collect()
    })
}

fn ids(set: &ArgSet) -> Vec<&str> {
    set.iter().map(|a| a.id.as_str()).collect()
}

impl<'a> Brute<'a> {
    pub fn new(fw: &'a Framework) -> Result<Self> {
        Self::with_base(fw, AttackerBase::Own)
    }

    pub fn with_base(fw: &'a Framework, base: AttackerBase) -> Result<Self> {
        if fw.len() > BRUTE_LIMIT {
            return Err(Error::SizeLimitExceeded { size: fw.len(), limit: BRUTE_LIMIT });
        }
        Ok(Self {
            fw,
            members: fw.arguments().iter().cloned().collect(),
            base,
            facts: RefCell::new(HashMap::new()),
            max: RefCell::new(HashMap::new()),
            attackers: RefCell::new(HashMap::new()),
        })
    }

    /// Every subset of `S`, in a fixed order.
    pub fn all_sets(&self) -> Vec<ArgSet> {
        subsets(&self.members).collect()
    }

    fn check_members(&self, set: &ArgSet) -> Result<()> {
        match set.iter().find(|a| !self.fw.arguments().contains(a)) {
            Some(a) => Err(Error::UnknownArgument(a.to_string())),
            None => Ok(()),
        }
    }

    pub fn strength(&self, attackers: &ArgSet, s: &ArgumentInstance) -> Result<Option<u32>> {
        self.fw.strengths().resolve(attackers, s)
    }

    pub fn vmax(&self, attackers: &ArgSet, s: &ArgumentInstance) -> Result<u32> {
        let items: Vec<ArgumentInstance> = attackers.iter().cloned().collect();
        if items.len() > 2 * BRUTE_LIMIT {
            return Err(Error::SizeLimitExceeded { size: items.len(), limit: 2 * BRUTE_LIMIT });
        }
        let mut best = 0;
        for sub in subsets(&items) {
            if let Some(v) = self.strength(&sub, s)? {
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
        for s in set {
            if self.defeats(set, s)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `α(set)`, or `None` when it is undefined.
    pub fn alpha(&self, set: &ArgSet) -> Result<Option<ArgSet>> {
        Ok(self.facts(set)?.alpha.clone())
    }

    fn compute_alpha(&self, set: &ArgSet) -> Result<Option<ArgSet>> {
        if !self.is_conflict_eliminable(set)? {
            return Ok(None);
        }
        let mut out = ArgSet::new();
        for s in set {
            out.insert(s.variant(s.capacity - self.vmax(set, s)?));
        }
        Ok(Some(out))
    }

    /// Arguments of the view of `set`: externals plus intrinsic arguments.
    pub fn view_arguments(&self, set: &ArgSet) -> Result<Option<ArgSet>> {
        let Some(alpha) = self.alpha(set)? else { return Ok(None) };
        let mut args: ArgSet = self.members.iter().filter(|a| !set.contains(*a)).cloned().collect();
        args.extend(alpha);
        Ok(Some(args))
    }

    /// Strength of `attackers` on `s` in the view of `coalition`: the
    /// framework's strength unless the attack lies among the coalition's
    /// own identifiers.
    pub fn view_strength(&self, coalition: &ArgSet, attackers: &ArgSet, s: &ArgumentInstance) -> Result<Option<u32>> {
        let cids = ids(coalition);
        if cids.contains(&s.id.as_str()) && attackers.iter().all(|a| cids.contains(&a.id.as_str())) {
            return Ok(None);
        }
        self.strength(attackers, s)
    }

    /// Strongest view strength any subset of `α(set)` has on `s`.
    fn c_strength(&self, set: &ArgSet, alpha: &ArgSet, s: &ArgumentInstance) -> Result<Option<u32>> {
        let items: Vec<ArgumentInstance> = alpha.iter().cloned().collect();
        let mut best = None;
        for sub in subsets(&items) {
            if let Some(v) = self.view_strength(set, &sub, s)? {
                best = Some(best.map_or(v, |b: u32| b.max(v)));
            }
        }
        Ok(best)
    }

    pub fn c_attacks(&self, set: &ArgSet, s: &ArgumentInstance) -> Result<bool> {
        let f = self.facts(set)?;
        if f.view.contains(s) {
            return Ok(f.c_attacked.contains(s));
        }
        match self.alpha(set)? {
            Some(alpha) => Ok(self.c_strength(set, &alpha, s)?.is_some()),
            None => Ok(false),
        }
    }

    pub fn c_defeats(&self, set: &ArgSet, s: &ArgumentInstance) -> Result<bool> {
        let f = self.facts(set)?;
        if f.view.contains(s) {
            return Ok(f.c_defeated.contains(s));
        }
        match self.alpha(set)? {
            Some(alpha) => Ok(self.c_strength(set, &alpha, s)?.is_some_and(|v| v >= s.capacity)),
            None => Ok(false),
        }
    }

    fn facts(&self, set: &ArgSet) -> Result<Rc<Facts>> {
        if let Some(f) = self.facts.borrow().get(set) {
            return Ok(f.clone());
        }
        self.check_members(set)?;
        let f = Rc::new(self.compute_facts(set)?);
        self.facts.borrow_mut().insert(set.clone(), f.clone());
        Ok(f)
    }

    fn compute_facts(&self, set: &ArgSet) -> Result<Facts> {
        let Some(alpha) = self.compute_alpha(set)? else {
            return Ok(Facts {
                alpha: None,
                view: ArgSet::new(),
                c_attacked: ArgSet::new(),
                c_defeated: ArgSet::new(),
                c_admissible: false,
                one_directional: false,
            });
        };
        let mut view: ArgSet = self.members.iter().filter(|a| !set.contains(*a)).cloned().collect();
        view.extend(alpha.iter().cloned());
        let mut c_attacked = ArgSet::new();
        let mut c_defeated = ArgSet::new();
        for s in &view {
            if let Some(v) = self.c_strength(set, &alpha, s)? {
                c_attacked.insert(s.clone());
                if v >= s.capacity {
                    c_defeated.insert(s.clone());
                }
            }
        }
        let view_items: Vec<ArgumentInstance> = view.iter().cloned().collect();
        let mut c_admissible = true;
        let mut one_directional = false;
        for s in set {
            // which attacker sets of the view have a strength on s
            let defined: Vec<(ArgSet, bool)> = subsets(&view_items)
                .map(|sx| Ok((sx.clone(), self.view_strength(set, &sx, s)?.is_some())))
                .collect::<Result<_>>()?;
            for (sx, has_strength) in &defined {
                if *has_strength && !sx.iter().any(|x| c_defeated.contains(x)) {
                    c_admissible = false;
                }
                let attacks = defined.iter().any(|(t, d)| *d && t.is_subset(sx));
                if attacks && !sx.iter().any(|x| c_attacked.contains(x)) {
                    one_directional = true;
                }
            }
        }
        Ok(Facts { alpha: Some(alpha), view, c_attacked, c_defeated, c_admissible, one_directional })
    }

    pub fn is_c_admissible(&self, set: &ArgSet) -> Result<bool> {
        let f = self.facts(set)?;
        Ok(f.alpha.is_some() && f.c_admissible)
    }

    pub fn is_one_directionally_attacked(&self, set: &ArgSet) -> Result<bool> {
        let f = self.facts(set)?;
        if f.alpha.is_none() {
            return Err(Error::NotConflictEliminable(display_set(set)));
        }
        Ok(f.one_directional)
    }

    pub fn conflict_eliminable_sets(&self) -> Result<Vec<ArgSet>> {
        self.filter_sets(|s| Ok(self.alpha(s)?.is_some()))
    }

    pub fn c_admissible_sets(&self) -> Result<Vec<ArgSet>> {
        self.filter_sets(|s| self.is_c_admissible(s))
    }

    pub fn c_preferred_sets(&self) -> Result<Vec<ArgSet>> {
        let admissible = self.c_admissible_sets()?;
        let mut out: Vec<ArgSet> = admissible
            .iter()
            .filter(|a| !admissible.iter().any(|b| b != *a && a.is_subset(b)))
            .cloned()
            .collect();
        out.sort();
        Ok(out)
    }

    fn filter_sets(&self, mut keep: impl FnMut(&ArgSet) -> Result<bool>) -> Result<Vec<ArgSet>> {
        let mut out = Vec::new();
        for s in self.all_sets() {
            if keep(&s)? {
                out.push(s);
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn state_rank(&self, set: &ArgSet) -> Result<StateRank> {
        Ok(if self.is_c_admissible(set)? {
            StateRank::CAdmissible
        } else if self.is_one_directionally_attacked(set)? {
            StateRank::OneDirectional
        } else {
            StateRank::Middle
        })
    }

    /// The state order as the three-condition disjunction.
    pub fn state_leq(&self, s1: &ArgSet, s2: &ArgSet) -> Result<bool> {
        if self.alpha(s1)?.is_none() || self.alpha(s2)?.is_none() {
            return Ok(false);
        }
        let adm1 = self.is_c_admissible(s1)?;
        let adm2 = self.is_c_admissible(s2)?;
        let od1 = self.is_one_directionally_attacked(s1)?;
        let od2 = self.is_one_directionally_attacked(s2)?;
        Ok(adm2 || od1 || (!adm1 && !od1 && !adm2 && !od2))
    }

    pub fn coalition_permitted(&self, s1: &ArgSet, s2: &ArgSet) -> Result<bool> {
        if !s1.is_disjoint(s2) {
            return Ok(false);
        }
        Ok(self.alpha(&s1.union(s2).cloned().collect())?.is_some())
    }

    pub fn attackers(&self, set: &ArgSet) -> Result<ArgSet> {
        if let Some(a) = self.attackers.borrow().get(set) {
            return Ok(a.clone());
        }
        let mut out = ArgSet::new();
        for s in &self.members {
            for t in set {
                if self.strength(&[s.clone()].into(), t)?.is_some() {
                    out.insert(s.clone());
                }
            }
        }
        self.attackers.borrow_mut().insert(set.clone(), out.clone());
        Ok(out)
    }

    pub fn undefeated_external(&self, base: &ArgSet, candidate: &ArgSet) -> Result<usize> {
        let mut n = 0;
        for s in self.attackers(base)? {
            if !candidate.contains(&s) && !self.c_defeats(candidate, &s)? {
                n += 1;
            }
        }
        Ok(n)
    }

    pub fn profitable(&self, s1: &ArgSet, s2: &ArgSet) -> Result<bool> {
        Ok(s1.is_subset(s2)
            && self.state_leq(s1, s2)?
            && self.undefeated_external(s1, s1)? >= self.undefeated_external(s1, s2)?)
    }

    pub fn max_sets(&self, s1: &ArgSet) -> Result<Vec<ArgSet>> {
        if let Some(v) = self.max.borrow().get(s1) {
            return Ok(v.as_ref().clone());
        }
        if self.alpha(s1)?.is_none() {
            return Err(Error::NotConflictEliminable(display_set(s1)));
        }
        let all = self.all_sets();
        let mut profitable = Vec::new();
        for sx in &all {
            if self.profitable(s1, sx)? {
                profitable.push(sx.clone());
            }
        }
        let mut out: Vec<ArgSet> = profitable
            .iter()
            .filter(|sx| !profitable.iter().any(|sy| sy != *sx && sx.is_subset(sy)))
            .cloned()
            .collect();
        out.sort();
        self.max.borrow_mut().insert(s1.clone(), Rc::new(out.clone()));
        Ok(out)
    }

    pub fn crit_leq(&self, beta: Criterion, x: &ArgSet, y: &ArgSet, base: &ArgSet) -> Result<bool> {
        Ok(match beta {
            Criterion::Size => x.len() <= y.len(),
            Criterion::State => self.state_leq(x, y)?,
            Criterion::Attackers => match self.base {
                AttackerBase::Own => self.undefeated_external(y, y)? <= self.undefeated_external(x, x)?,
                AttackerBase::Shared => self.undefeated_external(base, y)? <= self.undefeated_external(base, x)?,
            },
        })
    }

    pub fn crit_lt(&self, beta: Criterion, x: &ArgSet, y: &ArgSet, base: &ArgSet) -> Result<bool> {
        Ok(self.crit_leq(beta, x, y, base)? && !self.crit_leq(beta, y, x, base)?)
    }

    pub fn max_profitable(&self, s1: &ArgSet, s2: &ArgSet) -> Result<bool> {
        if !self.profitable(s1, s2)? {
            return Ok(false);
        }
        let max1 = self.max_sets(s1)?;
        'candidates: for sx in self.max_sets(s2)? {
            for sy in &max1 {
                for beta in Criterion::ALL {
                    if self.crit_lt(beta, &sx, sy, s1)? {
                        let mut compensated = false;
                        for gamma in Criterion::ALL {
                            if gamma != beta && self.crit_lt(gamma, sy, &sx, s1)? {
                                compensated = true;
                            }
                        }
                        if !compensated {
                            continue 'candidates;
                        }
                    }
                }
            }
            return Ok(true);
        }
        Ok(false)
    }

    pub fn formability(&self, kind: Formability, s1: &ArgSet) -> Result<Vec<ArgSet>> {
        if self.alpha(s1)?.is_none() {
            return Err(Error::NotConflictEliminable(display_set(s1)));
        }
        let mut out = Vec::new();
        for s2 in self.all_sets() {
            if s2.is_empty() || !self.coalition_permitted(s1, &s2)? {
                continue;
            }
            let u: ArgSet = s1.union(&s2).cloned().collect();
            let keep = match kind {
                Formability::W => self.profitable(s1, &u)? || self.profitable(&s2, &u)?,
                Formability::M => self.profitable(s1, &u)? && self.profitable(&s2, &u)?,
                Formability::WS => self.max_profitable(s1, &u)? || self.max_profitable(&s2, &u)?,
                Formability::S => self.max_profitable(s1, &u)? && self.max_profitable(&s2, &u)?,
            };
            if keep {
                out.push(s2);
            }
        }
        out.sort();
        Ok(out)
    }
}

pub fn brute_vmax(fw: &Framework, attackers: &ArgSet, s: &ArgumentInstance) -> Result<u32> {
    Brute::new(fw)?.vmax(attackers, s)
}

pub fn brute_alpha(fw: &Framework, set: &ArgSet) -> Result<Option<ArgSet>> {
    Brute::new(fw)?.alpha(set)
}

pub fn brute_c_admissible(fw: &Framework, set: &ArgSet) -> Result<bool> {
    Brute::new(fw)?.is_c_admissible(set)
}

pub fn brute_formability(fw: &Framework, kind: Formability, s1: &ArgSet) -> Result<Vec<ArgSet>> {
    Brute::new(fw)?.formability(kind, s1)
}
