#![allow(dead_code)]

use std::path::PathBuf;

use cfsem::io;
use cfsem::oracle::Brute;
use cfsem::{ArgSet, Formability, Framework, Result};

pub const FIXTURES: [&str; 7] = ["ldp", "seven", "asym", "disc", "indep-larger", "indep-state", "indep-fewer"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

pub fn fixture(name: &str) -> Framework {
    io::load(fixture_path(name)).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

pub fn set(fw: &Framework, ids: &[&str]) -> ArgSet {
    fw.set_of_ids(ids).unwrap()
}

pub fn subsets(fw: &Framework) -> Vec<ArgSet> {
    subsets_of(fw.arguments().members())
}

pub fn subsets_of(set: &ArgSet) -> Vec<ArgSet> {
    let items: Vec<_> = set.iter().cloned().collect();
    (0u32..1 << items.len())
        .map(|m| items.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, a)| a.clone()).collect())
        .collect()
}

/// Every disagreement between the evaluator and the brute-force reference.
pub fn oracle_mismatches(fw: &Framework) -> Result<Vec<String>> {
    let sem = fw.semantics();
    let brute = Brute::new(fw)?;
    let sets = subsets(fw);
    let mut out = Vec::new();
    let mut ce = Vec::new();
    for s1 in &sets {
        for s in fw.arguments().iter() {
            let (a, b) = (sem.vmax(s1, s)?, brute.vmax(s1, s)?);
            if a != b {
                out.push(format!("vmax({}, {s}): {a} vs {b}", cfsem::display_set(s1)));
            }
        }
        let alpha = brute.alpha(s1)?;
        let ours = sem.intrinsic(s1).ok().map(|a| a.members);
        if ours != alpha {
            out.push(format!("alpha({}): {ours:?} vs {alpha:?}", cfsem::display_set(s1)));
        }
        if alpha.is_some() {
            ce.push(s1.clone());
            let (a, b) = (sem.is_c_admissible(s1)?, brute.is_c_admissible(s1)?);
            if a != b {
                out.push(format!("c-admissible({}): {a} vs {b}", cfsem::display_set(s1)));
            }
            let (a, b) = (sem.state_rank(s1)?, brute.state_rank(s1)?);
            if a != b {
                out.push(format!("rank({}): {a} vs {b}", cfsem::display_set(s1)));
            }
        }
    }
    let (a, b) = (sem.c_preferred_sets()?, brute.c_preferred_sets()?);
    if a != b {
        out.push(format!("c-preferred: {a:?} vs {b:?}"));
    }
    for s1 in &ce {
        for s2 in &ce {
            if !s1.is_subset(s2) {
                continue;
            }
            let (a, b) = (sem.profitable(s1, s2)?.holds, brute.profitable(s1, s2)?);
            if a != b {
                out.push(format!("profitable({}, {}): {a} vs {b}", cfsem::display_set(s1), cfsem::display_set(s2)));
            }
            let (a, b) = (sem.max_profitable(s1, s2)?, brute.max_profitable(s1, s2)?);
            if a != b {
                out.push(format!("max-profitable({}, {}): {a} vs {b}", cfsem::display_set(s1), cfsem::display_set(s2)));
            }
        }
        for kind in Formability::ALL {
            let (a, b) = (sem.formability(kind, s1)?.partners, brute.formability(kind, s1)?);
            if a != b {
                out.push(format!("{kind}({}): {a:?} vs {b:?}", cfsem::display_set(s1)));
            }
        }
    }
    Ok(out)
}
