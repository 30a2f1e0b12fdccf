//! Coalition states, profitability, maximal profitability and the four
//! formability semantics.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::argument::ArgSet;
use crate::engine::{maximal, sorted_sets, AttackerBase, Semantics};
use crate::error::{Error, Result};
use crate::framework::Framework;

/// How well a conflict-eliminable set stands against external attacks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StateRank {
    /// Attacked by externals it cannot c-attack back.
    OneDirectional = 0,
    Middle = 1,
    CAdmissible = 2,
}

impl fmt::Display for StateRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StateRank::OneDirectional => "ONE_DIRECTIONAL",
            StateRank::Middle => "MIDDLE",
            StateRank::CAdmissible => "CADMISSIBLE",
        })
    }
}

/// The three profitability axioms evaluated for a pair `(S1, S2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProfitVerdict {
    pub holds: bool,
    pub larger_set: bool,
    pub better_state: bool,
    pub fewer_attackers: bool,
    /// Undefeated external attackers of `S1`, facing `S1` and facing `S2`.
    pub attacker_counts: (usize, usize),
}

/// The criteria compared by maximal profitability.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Criterion {
    /// Set size.
    #[serde(rename = "l")]
    Size,
    /// State rank.
    #[serde(rename = "b")]
    State,
    /// Undefeated external attackers.
    #[serde(rename = "f")]
    Attackers,
}

impl Criterion {
    pub const ALL: [Criterion; 3] = [Criterion::Size, Criterion::State, Criterion::Attackers];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Formability {
    W,
    M,
    WS,
    S,
}

impl Formability {
    pub const ALL: [Formability; 4] = [Formability::W, Formability::M, Formability::WS, Formability::S];
}

impl fmt::Display for Formability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Formability::W => "W",
            Formability::M => "M",
            Formability::WS => "WS",
            Formability::S => "S",
        })
    }
}

impl FromStr for Formability {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "W" => Ok(Formability::W),
            "M" => Ok(Formability::M),
            "WS" => Ok(Formability::WS),
            "S" => Ok(Formability::S),
            other => Err(format!("unknown formability semantics {other} (expected W, M, WS or S)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormabilityResult {
    pub semantics: Formability,
    pub base: ArgSet,
    /// Partner sets in canonical order.
    pub partners: Vec<ArgSet>,
}

impl<'a> Semantics<'a> {
    pub(crate) fn rank_at(&self, mask: u32) -> Result<StateRank> {
        let f = self.require_ce(mask)?;
        Ok(if f.c_admissible {
            StateRank::CAdmissible
        } else if f.one_directional {
            StateRank::OneDirectional
        } else {
            StateRank::Middle
        })
    }

    pub(crate) fn state_leq_at(&self, a: u32, b: u32) -> Result<bool> {
        if !self.is_ce(a)? || !self.is_ce(b)? {
            return Ok(false);
        }
        Ok(self.rank_at(a)? <= self.rank_at(b)?)
    }

    pub(crate) fn permitted_at(&self, a: u32, b: u32) -> Result<bool> {
        Ok(a & b == 0 && self.is_ce(a | b)?)
    }

    /// Attackers of `base` outside `candidate` that `candidate` does not c-defeat.
    pub(crate) fn undefeated_at(&self, base: u32, candidate: u32) -> Result<usize> {
        let f = self.facts(candidate)?;
        let defeated = if f.ce { f.c_defeated } else { 0 };
        Ok((self.attacker_mask(base) & !candidate & !defeated).count_ones() as usize)
    }

    pub(crate) fn profit_at(&self, a: u32, b: u32) -> Result<ProfitVerdict> {
        let larger_set = a & !b == 0;
        let better_state = self.state_leq_at(a, b)?;
        let counts = (self.undefeated_at(a, a)?, self.undefeated_at(a, b)?);
        let fewer_attackers = counts.0 >= counts.1;
        Ok(ProfitVerdict {
            holds: larger_set && better_state && fewer_attackers,
            larger_set,
            better_state,
            fewer_attackers,
            attacker_counts: counts,
        })
    }

    pub(crate) fn profitable_at(&self, a: u32, b: u32) -> Result<bool> {
        // cheap checks first
        if a & !b != 0 || !self.is_ce(a)? || !self.is_ce(b)? {
            return Ok(false);
        }
        Ok(self.profit_at(a, b)?.holds)
    }

    /// `Max(a)`: the ⊴-maximal sets profitable for `a`.
    pub(crate) fn max_at(&self, a: u32) -> Result<Arc<Vec<u32>>> {
        if let Some(v) = self.max_cache.lock().expect("max cache poisoned").get(&a) {
            return Ok(v.clone());
        }
        self.check_limit()?;
        self.require_ce(a)?;
        let rest = self.full() & !a;
        let mut profitable = Vec::new();
        let mut sub = rest;
        loop {
            if self.profitable_at(a, a | sub)? {
                profitable.push(a | sub);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        profitable.sort_unstable();
        let result = Arc::new(maximal(&profitable));
        self.max_cache.lock().expect("max cache poisoned").insert(a, result.clone());
        Ok(result)
    }

    pub(crate) fn crit_leq_at(&self, beta: Criterion, x: u32, y: u32, base: u32) -> Result<bool> {
        Ok(match beta {
            Criterion::Size => x.count_ones() <= y.count_ones(),
            Criterion::State => self.rank_at(x)? <= self.rank_at(y)?,
            Criterion::Attackers => match self.config.attacker_base {
                AttackerBase::Own => self.undefeated_at(y, y)? <= self.undefeated_at(x, x)?,
                AttackerBase::Shared => self.undefeated_at(base, y)? <= self.undefeated_at(base, x)?,
            },
        })
    }

    pub(crate) fn crit_lt_at(&self, beta: Criterion, x: u32, y: u32, base: u32) -> Result<bool> {
        Ok(self.crit_leq_at(beta, x, y, base)? && !self.crit_leq_at(beta, y, x, base)?)
    }

    pub(crate) fn max_profitable_at(&self, a: u32, b: u32) -> Result<bool> {
        if !self.profitable_at(a, b)? {
            return Ok(false);
        }
        let max_b = self.max_at(b)?;
        let max_a = self.max_at(a)?;
        for &sx in max_b.iter() {
            if self.unbeaten(sx, &max_a, a)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// No member of `rivals` beats `sx` strictly on one criterion without
    /// `sx` compensating strictly on another.
    fn unbeaten(&self, sx: u32, rivals: &[u32], base: u32) -> Result<bool> {
        for &sy in rivals {
            for beta in Criterion::ALL {
                if !self.crit_lt_at(beta, sx, sy, base)? {
                    continue;
                }
                let mut compensated = false;
                for gamma in Criterion::ALL {
                    if gamma != beta && self.crit_lt_at(gamma, sy, sx, base)? {
                        compensated = true;
                        break;
                    }
                }
                if !compensated {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub(crate) fn formability_at(&self, kind: Formability, s1: u32) -> Result<Vec<u32>> {
        self.check_limit()?;
        self.require_ce(s1)?;
        let rest = self.full() & !s1;
        let mut out = Vec::new();
        let mut s2 = rest;
        while s2 != 0 {
            if self.permitted_at(s1, s2)? && self.formable_at(kind, s1, s2)? {
                out.push(s2);
            }
            s2 = (s2 - 1) & rest;
        }
        out.sort_unstable();
        Ok(out)
    }

    pub(crate) fn formable_at(&self, kind: Formability, s1: u32, s2: u32) -> Result<bool> {
        let u = s1 | s2;
        Ok(match kind {
            Formability::W => self.profitable_at(s1, u)? || self.profitable_at(s2, u)?,
            Formability::M => self.profitable_at(s1, u)? && self.profitable_at(s2, u)?,
            Formability::WS => self.max_profitable_at(s1, u)? || self.max_profitable_at(s2, u)?,
            Formability::S => self.max_profitable_at(s1, u)? && self.max_profitable_at(s2, u)?,
        })
    }

    /// Whether every `Sw` with `s1 ⊆ Sw ⊆ sz` and coalition permitted between
    /// `s1` and `Sw \ s1` satisfies `s1 ⊴ Sw`; returns a failing `Sw` otherwise.
    pub(crate) fn continuity_witness(&self, s1: u32, sz: u32) -> Result<Option<u32>> {
        let rest = sz & !s1;
        let mut t = rest;
        loop {
            let sw = s1 | t;
            if self.permitted_at(s1, t)? && !self.profitable_at(s1, sw)? {
                return Ok(Some(sw));
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & rest;
        }
        Ok(None)
    }

    pub(crate) fn weakly_continuous_at(&self, s1: u32) -> Result<bool> {
        for &sz in self.max_at(s1)?.iter() {
            if self.continuity_witness(s1, sz)?.is_none() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub(crate) fn continuous_at(&self, s1: u32) -> Result<bool> {
        for &sz in self.max_at(s1)?.iter() {
            if self.continuity_witness(s1, sz)?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub(crate) fn pref_at(&self, s1: u32) -> Result<Vec<u32>> {
        Ok(self.c_preferred_masks()?.into_iter().filter(|&p| p & s1 == s1).collect())
    }

    pub fn is_one_directionally_attacked(&self, set: &ArgSet) -> Result<bool> {
        self.one_directional(self.mask(set)?)
    }

    pub fn state_rank(&self, set: &ArgSet) -> Result<StateRank> {
        self.rank_at(self.mask(set)?)
    }

    pub fn state_leq(&self, s1: &ArgSet, s2: &ArgSet) -> Result<bool> {
        self.state_leq_at(self.mask(s1)?, self.mask(s2)?)
    }

    pub fn coalition_permitted(&self, s1: &ArgSet, s2: &ArgSet) -> Result<bool> {
        self.permitted_at(self.mask(s1)?, self.mask(s2)?)
    }

    /// Members of `S` whose singleton attacks some member of `set`.
    pub fn attackers(&self, set: &ArgSet) -> Result<ArgSet> {
        Ok(self.set(self.attacker_mask(self.mask(set)?)))
    }

    pub fn undefeated_external(&self, base: &ArgSet, candidate: &ArgSet) -> Result<usize> {
        self.undefeated_at(self.mask(base)?, self.mask(candidate)?)
    }

    pub fn profitable(&self, s1: &ArgSet, s2: &ArgSet) -> Result<ProfitVerdict> {
        self.profit_at(self.mask(s1)?, self.mask(s2)?)
    }

    pub fn max_sets(&self, s1: &ArgSet) -> Result<Vec<ArgSet>> {
        Ok(sorted_sets(self, &self.max_at(self.mask(s1)?)?))
    }

    pub fn pref_supersets(&self, s1: &ArgSet) -> Result<Vec<ArgSet>> {
        Ok(sorted_sets(self, &self.pref_at(self.mask(s1)?)?))
    }

    /// `s1 ≤_β s2`. With a shared attacker base, the fewer-attackers
    /// criterion measures both sets against the attackers of `s1`.
    pub fn crit_leq(&self, beta: Criterion, s1: &ArgSet, s2: &ArgSet) -> Result<bool> {
        let (a, b) = (self.mask(s1)?, self.mask(s2)?);
        if beta != Criterion::Size {
            self.require_ce(a)?;
            self.require_ce(b)?;
        }
        self.crit_leq_at(beta, a, b, a)
    }

    pub fn crit_lt(&self, beta: Criterion, s1: &ArgSet, s2: &ArgSet) -> Result<bool> {
        Ok(self.crit_leq(beta, s1, s2)? && !self.crit_leq(beta, s2, s1)?)
    }

    pub fn max_profitable(&self, s1: &ArgSet, s2: &ArgSet) -> Result<bool> {
        self.max_profitable_at(self.mask(s1)?, self.mask(s2)?)
    }

    pub fn formability(&self, kind: Formability, s1: &ArgSet) -> Result<FormabilityResult> {
        let partners = self.formability_at(kind, self.mask(s1)?)?;
        Ok(FormabilityResult { semantics: kind, base: s1.clone(), partners: sorted_sets(self, &partners) })
    }

    pub fn is_weakly_continuous(&self, s1: &ArgSet) -> Result<bool> {
        self.weakly_continuous_at(self.mask(s1)?)
    }

    pub fn is_continuous(&self, s1: &ArgSet) -> Result<bool> {
        self.continuous_at(self.mask(s1)?)
    }

    /// A set `Sw` between `s1` and `sz` that breaks continuity, if any.
    pub fn continuity_counterexample(&self, s1: &ArgSet, sz: &ArgSet) -> Result<Option<ArgSet>> {
        let (a, z) = (self.mask(s1)?, self.mask(sz)?);
        if a & !z != 0 {
            return Err(Error::PreconditionUnmet("the maximal set must contain the coalition".into()));
        }
        Ok(self.continuity_witness(a, z)?.map(|m| self.set(m)))
    }
}

pub fn is_one_directionally_attacked(fw: &Framework, set: &ArgSet) -> Result<bool> {
    fw.semantics().is_one_directionally_attacked(set)
}

pub fn state_rank(fw: &Framework, set: &ArgSet) -> Result<StateRank> {
    fw.semantics().state_rank(set)
}

pub fn state_leq(fw: &Framework, s1: &ArgSet, s2: &ArgSet) -> Result<bool> {
    fw.semantics().state_leq(s1, s2)
}

pub fn coalition_permitted(fw: &Framework, s1: &ArgSet, s2: &ArgSet) -> Result<bool> {
    fw.semantics().coalition_permitted(s1, s2)
}

pub fn attackers(fw: &Framework, set: &ArgSet) -> Result<ArgSet> {
    fw.semantics().attackers(set)
}

pub fn undefeated_external(fw: &Framework, base: &ArgSet, candidate: &ArgSet) -> Result<usize> {
    fw.semantics().undefeated_external(base, candidate)
}

pub fn profitable(fw: &Framework, s1: &ArgSet, s2: &ArgSet) -> Result<ProfitVerdict> {
    fw.semantics().profitable(s1, s2)
}

pub fn max_sets(fw: &Framework, s1: &ArgSet) -> Result<Vec<ArgSet>> {
    fw.semantics().max_sets(s1)
}

pub fn pref_supersets(fw: &Framework, s1: &ArgSet) -> Result<Vec<ArgSet>> {
    fw.semantics().pref_supersets(s1)
}

pub fn crit_leq(fw: &Framework, beta: Criterion, s1: &ArgSet, s2: &ArgSet) -> Result<bool> {
    fw.semantics().crit_leq(beta, s1, s2)
}

pub fn max_profitable(fw: &Framework, s1: &ArgSet, s2: &ArgSet) -> Result<bool> {
    fw.semantics().max_profitable(s1, s2)
}

pub fn formability(fw: &Framework, kind: Formability, s1: &ArgSet) -> Result<FormabilityResult> {
    fw.semantics().formability(kind, s1)
}

pub fn is_weakly_continuous(fw: &Framework, s1: &ArgSet) -> Result<bool> {
    fw.semantics().is_weakly_continuous(s1)
}

pub fn is_continuous(fw: &Framework, s1: &ArgSet) -> Result<bool> {
    fw.semantics().is_continuous(s1)
}
