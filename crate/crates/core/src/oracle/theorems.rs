//! Mechanical checkers for the lemma, propositions and theorems about the
//! semantics. Each checker instantiates the statement's quantifiers over
//! every subset of a small framework and reports the first counterexample.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::argument::{display_set, ArgSet, ArgumentInstance};
use crate::coalition::Formability;
use crate::engine::Semantics;
use crate::error::{Error, Result};
use crate::framework::Framework;
use crate::np::check_reduction;
use crate::oracle::brute::{Brute, BRUTE_LIMIT};

/// The checkable statements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Theorem {
    /// Defeats survive enlarging the attacking set.
    L1,
    /// Raising attacker capacities keeps attacks defined and no weaker.
    P1,
    /// Intrinsic capacities are non-negative and keep every identifier.
    P2,
    /// Intrinsic arguments are conflict-free in their view.
    P4,
    /// c-attacks and c-defeats agree whether read over `S` or over the view.
    P5,
    /// Permitted coalitions consist of conflict-eliminable parts.
    P6,
    /// Some pair satisfies exactly one profitability axiom.
    P7,
    /// A restricted framework behaves as a group-attack framework.
    T1,
    /// Subsets of a c-admissible set profit from joining it.
    T2,
    /// Profitable c-admissible coalitions extend to c-preferred ones.
    T3,
    /// c-preferred supersets are mutually maximal coalitions.
    T4,
    /// Profitability is not symmetric between partners.
    T7,
    /// Profitability is not continuous.
    T8,
    /// Continuity inside a c-preferred set is pairwise profitability.
    T9,
    /// Inclusions between the formability semantics.
    T10,
}

impl Theorem {
    pub const ALL: [Theorem; 15] = [
        Theorem::L1,
        Theorem::P1,
        Theorem::P2,
        Theorem::P4,
        Theorem::P5,
        Theorem::P6,
        Theorem::P7,
        Theorem::T1,
        Theorem::T2,
        Theorem::T3,
        Theorem::T4,
        Theorem::T7,
        Theorem::T8,
        Theorem::T9,
        Theorem::T10,
    ];

    /// Universally quantified statements; the rest assert existence and are
    /// not refuted by a framework lacking a witness.
    pub fn is_universal(self) -> bool {
        !matches!(self, Theorem::P7 | Theorem::T7 | Theorem::T8)
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// An existential statement without a witness in this framework, or a
    /// statement whose preconditions the framework does not meet.
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not-applicable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: Theorem,
    pub framework: String,
    pub verdict: Verdict,
    /// A replayable counterexample on failure, or the witness found for an
    /// existential statement.
    pub counterexample: Option<String>,
    pub detail: String,
}

impl TheoremReport {
    fn new(theorem: Theorem, verdict: Verdict, witness: Option<String>, detail: impl Into<String>) -> Self {
        Self { theorem, framework: String::new(), verdict, counterexample: witness, detail: detail.into() }
    }

    fn pass(theorem: Theorem, detail: impl Into<String>) -> Self {
        Self::new(theorem, Verdict::Pass, None, detail)
    }

    fn fail(theorem: Theorem, witness: String, detail: impl Into<String>) -> Self {
        Self::new(theorem, Verdict::Fail, Some(witness), detail)
    }

    pub fn named(mut self, framework: impl Into<String>) -> Self {
        self.framework = framework.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}: {}", self.theorem, if self.framework.is_empty() { "-" } else { &self.framework }, self.verdict)?;
        if let Some(w) = &self.counterexample {
            write!(f, " [{w}]")?;
        }
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

fn show(sem: &Semantics<'_>, m: u32) -> String {
    display_set(&sem.set(m))
}

/// Nonempty-or-empty submasks of `m`, `m` itself included.
fn submasks(m: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(m);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & m) };
        Some(cur)
    })
}

pub fn check_theorem(fw: &Framework, theorem: Theorem) -> Result<TheoremReport> {
    if fw.len() > BRUTE_LIMIT {
        return Err(Error::SizeLimitExceeded { size: fw.len(), limit: BRUTE_LIMIT });
    }
    let sem = fw.semantics();
    let all = sem.full();
    let masks = || submasks(all);
    use Theorem::*;
    Ok(match theorem {
        L1 => {
            for a in masks() {
                for b in submasks(all & !a) {
                    for s in Semantics::members(a) {
                        let wide = a | b;
                        let narrow = sem.vmax_at(a, s)?;
                        let defeats = |v: u32| v > 0 && v >= sem.caps[s];
                        if defeats(narrow) && !defeats(sem.vmax_at(wide, s)?) {
                            return Ok(TheoremReport::fail(
                                L1,
                                format!("{} defeats {} but {} does not", show(&sem, a), sem.set(1 << s).first().unwrap(), show(&sem, wide)),
                                "",
                            ));
                        }
                    }
                }
            }
            TheoremReport::pass(L1, "all nested pairs")
        }
        P1 => check_source_monotonicity(fw)?,
        P2 => {
            for m in masks() {
                let Some(caps) = sem.alpha_caps(m)? else { continue };
                for i in Semantics::members(m) {
                    let v = sem.vmax_at(m, i)?;
                    if v > sem.caps[i] || caps[i] != sem.caps[i] - v {
                        return Ok(TheoremReport::fail(P2, show(&sem, m), "intrinsic capacity below zero"));
                    }
                }
                let alpha = sem.intrinsic(&sem.set(m))?;
                let same_ids = alpha.members.iter().map(|a| &a.id).eq(sem.set(m).iter().map(|a| &a.id));
                if !same_ids {
                    return Ok(TheoremReport::fail(P2, show(&sem, m), "identifiers changed"));
                }
            }
            TheoremReport::pass(P2, "every conflict-eliminable subset")
        }
        P4 => {
            let brute = Brute::new(fw)?;
            for m in sem.ce_masks()? {
                let set = sem.set(m);
                let alpha = sem.intrinsic(&set)?.members;
                let items: Vec<ArgumentInstance> = alpha.iter().cloned().collect();
                for sub in 1u32..1 << items.len() {
                    let attackers: ArgSet =
                        items.iter().enumerate().filter(|(i, _)| sub >> i & 1 == 1).map(|(_, a)| a.clone()).collect();
                    for t in &alpha {
                        if brute.view_strength(&set, &attackers, t)?.is_some() {
                            return Ok(TheoremReport::fail(
                                P4,
                                format!("{} attacks {t} in the view of {}", display_set(&attackers), display_set(&set)),
                                "",
                            ));
                        }
                    }
                }
                if let Some(e) = sem.view(&set)?.attacks.iter().find(|e| alpha.contains(&e.target) && e.attackers.is_subset(&alpha)) {
                    return Ok(TheoremReport::fail(P4, format!("view of {} keeps {e}", display_set(&set)), ""));
                }
            }
            TheoremReport::pass(P4, "every conflict-eliminable subset")
        }
        P5 => {
            let brute = Brute::new(fw)?;
            for m in sem.ce_masks()? {
                let set = sem.set(m);
                let view = brute.view_arguments(&set)?.expect("conflict-eliminable");
                let targets: ArgSet = fw.arguments().iter().cloned().chain(view.iter().cloned()).collect();
                for s in &targets {
                    let over_s = (sem.c_attacks(&set, s)?, sem.c_defeats(&set, s)?);
                    let over_view = (brute.c_attacks(&set, s)?, brute.c_defeats(&set, s)?);
                    if over_s != over_view {
                        return Ok(TheoremReport::fail(
                            P5,
                            format!("{} on {s}", display_set(&set)),
                            format!("framework reading {over_s:?}, view reading {over_view:?} as (c-attacks, c-defeats)"),
                        ));
                    }
                }
            }
            TheoremReport::pass(P5, "every conflict-eliminable subset and target")
        }
        P6 => {
            for a in masks() {
                for b in submasks(all & !a) {
                    if sem.permitted_at(a, b)? && !(sem.is_ce(a)? && sem.is_ce(b)?) {
                        return Ok(TheoremReport::fail(P6, format!("{} with {}", show(&sem, a), show(&sem, b)), ""));
                    }
                }
            }
            TheoremReport::pass(P6, "all disjoint pairs")
        }
        P7 => {
            let mut found: BTreeMap<&str, String> = BTreeMap::new();
            for a in sem.ce_masks()? {
                for b in sem.ce_masks()? {
                    let v = sem.profit_at(a, b)?;
                    let flags = [("larger set", v.larger_set), ("better state", v.better_state), ("fewer attackers", v.fewer_attackers)];
                    if flags.iter().filter(|f| f.1).count() == 1 {
                        let name = flags.iter().find(|f| f.1).expect("one flag").0;
                        found.entry(name).or_insert_with(|| format!("{} vs {}", show(&sem, a), show(&sem, b)));
                    }
                }
            }
            if found.is_empty() {
                TheoremReport::new(P7, Verdict::NotApplicable, None, "no pair satisfies exactly one axiom")
            } else {
                let witness = found.iter().map(|(k, v)| format!("only {k}: {v}")).collect::<Vec<_>>().join("; ");
                TheoremReport::new(P7, Verdict::Pass, Some(witness), "")
            }
        }
        T1 => match check_reduction(fw) {
            Ok(r) if r.ok => TheoremReport::pass(T1, "all five claims"),
            Ok(r) => TheoremReport::fail(T1, r.violations[0].to_string(), format!("{} discrepancies", r.violations.len())),
            Err(Error::PreconditionUnmet(why)) => TheoremReport::new(T1, Verdict::NotApplicable, None, why),
            Err(e) => return Err(e),
        },
        T2 => {
            for x in sem.c_admissible_masks()? {
                for s1 in submasks(x) {
                    if s1 == x || !sem.is_ce(s1)? {
                        continue;
                    }
                    let s2 = x & !s1;
                    let witness = || format!("S1 = {}, Sx = {}", show(&sem, s1), show(&sem, x));
                    if !sem.is_ce(s2)? {
                        return Ok(TheoremReport::fail(T2, witness(), "difference not conflict-eliminable"));
                    }
                    if !sem.permitted_at(s1, s2)? {
                        return Ok(TheoremReport::fail(T2, witness(), "coalition not permitted"));
                    }
                    if !sem.profitable_at(s1, x)? {
                        return Ok(TheoremReport::fail(T2, witness(), "S1 does not profit from Sx"));
                    }
                }
            }
            TheoremReport::pass(T2, "every c-admissible set and proper subset")
        }
        T3 => {
            let preferred = sem.c_preferred_masks()?;
            for s1 in sem.ce_masks()? {
                for s2 in submasks(all & !s1) {
                    let u = s1 | s2;
                    if !(sem.permitted_at(s1, s2)? && sem.profitable_at(s1, u)? && sem.c_admissible(u)?) {
                        continue;
                    }
                    let mut exists = false;
                    for &p in &preferred {
                        let s3 = p & !s1;
                        if p & s1 == s1 && s3 & s2 == s2 && sem.permitted_at(s1, s3)? && sem.profitable_at(s1, p)? {
                            exists = true;
                            break;
                        }
                    }
                    if !exists {
                        return Ok(TheoremReport::fail(T3, format!("S1 = {}, S2 = {}", show(&sem, s1), show(&sem, s2)), "no c-preferred extension"));
                    }
                }
            }
            TheoremReport::pass(T3, "every profitable c-admissible coalition")
        }
        T4 => {
            for s1 in sem.ce_masks()? {
                for x in sem.pref_at(s1)? {
                    let rest = x & !s1;
                    let witness = |extra: String| format!("S1 = {}, Sx = {}{extra}", show(&sem, s1), show(&sem, x));
                    if !sem.profitable_at(s1, x)? {
                        return Ok(TheoremReport::fail(T4, witness(String::new()), "S1 does not profit from Sx"));
                    }
                    if !sem.profitable_at(rest, x)? {
                        return Ok(TheoremReport::fail(T4, witness(String::new()), "Sx \\ S1 does not profit from Sx"));
                    }
                    for y in submasks(all) {
                        if y == x || y & x != x {
                            continue;
                        }
                        if sem.profitable_at(s1, y)? {
                            return Ok(TheoremReport::fail(T4, witness(format!(", Sy = {}", show(&sem, y))), "S1 profits from a strict superset of Sx"));
                        }
                        if sem.profitable_at(rest, y)? {
                            return Ok(TheoremReport::fail(T4, witness(format!(", Sy = {}", show(&sem, y))), "Sx \\ S1 profits from a strict superset of Sx"));
                        }
                    }
                }
            }
            TheoremReport::pass(T4, "every conflict-eliminable set and c-preferred superset")
        }
        T7 => {
            for s1 in sem.ce_masks()? {
                for s2 in submasks(all & !s1) {
                    let u = s1 | s2;
                    if s2 != 0 && sem.permitted_at(s1, s2)? && sem.profitable_at(s1, u)? && !sem.profitable_at(s2, u)? {
                        return Ok(TheoremReport::new(
                            T7,
                            Verdict::Pass,
                            Some(format!("S1 = {}, S2 = {}", show(&sem, s1), show(&sem, s2))),
                            "S1 profits from the union, S2 does not",
                        ));
                    }
                }
            }
            TheoremReport::new(T7, Verdict::NotApplicable, None, "no asymmetric pair")
        }
        T8 => {
            // Prefer a nonempty S1 whose Max equals Pref, the case the
            // statement stresses; fall back to any witness.
            let mut fallback = None;
            for s1 in sem.ce_masks()? {
                if s1 == 0 {
                    continue;
                }
                let max = sem.max_at(s1)?;
                let mut sorted = max.to_vec();
                sorted.sort_unstable();
                let same = sorted == sem.pref_at(s1)?;
                for &x in max.iter() {
                    if let Some(s2) = sem.continuity_witness(s1, x)? {
                        let found = (format!("S1 = {}, S2 = {}, Sx = {}", show(&sem, s1), show(&sem, s2), show(&sem, x)), same);
                        if same {
                            return Ok(TheoremReport::new(T8, Verdict::Pass, Some(found.0), "Max(S1) = Pref(S1)"));
                        }
                        fallback.get_or_insert(found);
                    }
                }
            }
            match fallback {
                Some((w, _)) => TheoremReport::new(T8, Verdict::Pass, Some(w), "Max(S1) differs from Pref(S1)"),
                None => TheoremReport::new(T8, Verdict::NotApplicable, None, "profitability is continuous here"),
            }
        }
        T9 => {
            for x in sem.c_preferred_masks()? {
                let mut left = true;
                let mut left_witness = None;
                for s1 in submasks(x) {
                    if s1 != x && sem.is_ce(s1)? && !sem.weakly_continuous_at(s1)? {
                        left = false;
                        left_witness = Some(s1);
                        break;
                    }
                }
                let mut right = true;
                let mut right_witness = None;
                'pairs: for y in submasks(x) {
                    for z in submasks(x & !y) {
                        if !sem.profitable_at(y, y | z)? {
                            right = false;
                            right_witness = Some((y, z));
                            break 'pairs;
                        }
                    }
                }
                if left != right {
                    let why = match (left_witness, right_witness) {
                        (Some(s1), _) => {
                            format!("every disjoint pair profits, yet not weakly continuous for {}", show(&sem, s1))
                        }
                        (_, Some((y, z))) => format!(
                            "weakly continuous for every proper subset, yet {} does not profit from adding {}",
                            show(&sem, y),
                            show(&sem, z)
                        ),
                        _ => String::new(),
                    };
                    return Ok(TheoremReport::fail(T9, format!("Sx = {}", show(&sem, x)), why));
                }
            }
            TheoremReport::pass(T9, "every c-preferred set")
        }
        T10 => {
            for s1 in sem.ce_masks()? {
                let get = |k| -> Result<Vec<u32>> { sem.formability_at(k, s1) };
                let (w, m, ws, s) = (get(Formability::W)?, get(Formability::M)?, get(Formability::WS)?, get(Formability::S)?);
                let subset = |a: &[u32], b: &[u32]| a.iter().find(|x| !b.contains(x)).copied();
                for (name, a, b) in [("M ⊆ W", &m, &w), ("WS ⊆ W", &ws, &w), ("S ⊆ M", &s, &m), ("S ⊆ WS", &s, &ws)] {
                    if let Some(p) = subset(a, b) {
                        return Ok(TheoremReport::fail(T10, format!("S1 = {}, S2 = {}", show(&sem, s1), show(&sem, p)), format!("{name} fails")));
                    }
                }
            }
            TheoremReport::pass(T10, "every conflict-eliminable set")
        }
    })
}

/// Raising one attacker's capacity within the instantiated domain keeps an
/// attack defined and no weaker; chains of such raises give the general case.
fn check_source_monotonicity(fw: &Framework) -> Result<TheoremReport> {
    let domain = fw.domain();
    let mut by_id: BTreeMap<&str, Vec<&ArgumentInstance>> = BTreeMap::new();
    for a in &domain {
        by_id.entry(a.id.as_str()).or_default().push(a);
    }
    let ids: Vec<&str> = by_id.keys().copied().collect();
    let model = fw.strengths();
    for target in &domain {
        let others: Vec<&str> = ids.iter().copied().filter(|i| *i != target.id).collect();
        // every identifier-unique attacker set: per identifier, absent or one variant
        let radix: Vec<usize> = others.iter().map(|i| by_id[i].len() + 1).collect();
        let total: usize = radix.iter().product();
        for code in 1..total {
            let mut choice = Vec::with_capacity(others.len());
            let mut c = code;
            for r in &radix {
                choice.push(c % r);
                c /= r;
            }
            let pick = |choice: &[usize]| -> ArgSet {
                others
                    .iter()
                    .zip(choice)
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| by_id[i][k - 1].clone())
                    .collect()
            };
            let attackers = pick(&choice);
            let Ok(Some(v)) = model.resolve(&attackers, target) else { continue };
            for (pos, &k) in choice.iter().enumerate() {
                if k == 0 || k == radix[pos] - 1 {
                    continue;
                }
                let mut raised = choice.clone();
                raised[pos] = k + 1;
                let higher = pick(&raised);
                match model.resolve(&higher, target) {
                    Ok(Some(w)) if w >= v => {}
                    Err(_) => {}
                    other => {
                        return Ok(TheoremReport::fail(
                            Theorem::P1,
                            format!("{} on {target} = {v}, raised {} gives {:?}", display_set(&attackers), display_set(&higher), other.ok().flatten()),
                            "",
                        ))
                    }
                }
            }
        }
    }
    Ok(TheoremReport::pass(Theorem::P1, format!("{} domain instances", domain.len())))
}

/// Runs every checker on `fw`.
pub fn check_all(fw: &Framework, name: &str) -> Result<Vec<TheoremReport>> {
    Theorem::ALL.iter().map(|&t| Ok(check_theorem(fw, t)?.named(name))).collect()
}
