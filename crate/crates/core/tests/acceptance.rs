//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use cfsem::dot::{export_dot, DotScope};
use cfsem::io;
use cfsem::oracle::{check_theorem, generate_random, generate_restricted, RandomModelSpec, Theorem, Verdict};
use cfsem::{arg_set, check_reduction, Aggregator, ArgSet, ArgumentInstance, Formability, Framework, NPFramework, NPKind};

use common::{fixture, fixture_path, oracle_mismatches, set};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, what: impl Into<String>, failures: &mut Vec<String>) {
    if !cond {
        failures.push(what.into());
    }
}

fn finish(failures: Vec<String>, ok: impl Into<String>) -> Outcome {
    if failures.is_empty() {
        Ok(ok.into())
    } else {
        Err(failures.join("; "))
    }
}

fn within(start: Instant, budget: Duration, failures: &mut Vec<String>) -> Duration {
    let took = start.elapsed();
    check(took <= budget, format!("took {took:?}, budget {budget:?}"), failures);
    took
}

fn sets(items: &[&[(&str, u32)]]) -> Vec<ArgSet> {
    let mut v: Vec<ArgSet> = items.iter().map(|s| arg_set(s.iter().copied())).collect();
    v.sort();
    v
}

fn show(sets: &[ArgSet]) -> String {
    sets.iter().map(cfsem::display_set).collect::<Vec<_>>().join(" ")
}

fn intrinsic_values() -> Outcome {
    let start = Instant::now();
    let fw = fixture("ldp");
    let sem = fw.semantics();
    let mut failures = Vec::new();
    let cases = [
        (vec![("a1", 4), ("a3", 5)], vec![("a1", 1), ("a3", 2)]),
        (vec![("a1", 4), ("a2", 3), ("a3", 5)], vec![("a1", 1), ("a2", 1), ("a3", 1)]),
    ];
    for (coalition, expected) in cases {
        let coalition = arg_set(coalition);
        let got = sem.intrinsic(&coalition).map_err(|e| e.to_string())?.members;
        check(got == arg_set(expected.clone()), format!("alpha({}) = {}", cfsem::display_set(&coalition), cfsem::display_set(&got)), &mut failures);
    }
    let took = within(start, Duration::from_secs(1), &mut failures);
    finish(failures, format!("both intrinsic sets exact ({took:?})"))
}

fn ldp_booleans() -> Outcome {
    let fw = fixture("ldp");
    let sem = fw.semantics();
    let e = |r: cfsem::Result<bool>| r.map_err(|e| e.to_string());
    let a3 = arg_set([("a3", 5)]);
    let a13 = arg_set([("a1", 4), ("a3", 5)]);
    let a123 = arg_set([("a1", 4), ("a2", 3), ("a3", 5)]);
    let mut failures = Vec::new();
    check(e(sem.c_defeats(&a3, &ArgumentInstance::new("a4", 1)))?, "{(a3,5)} does not c-defeat (a4,1)", &mut failures);
    check(e(sem.c_attacks(&a13, &ArgumentInstance::new("a2", 3)))?, "{(a1,4),(a3,5)} does not c-attack (a2,3)", &mut failures);
    check(!e(sem.is_c_admissible(&a13))?, "{(a1,4),(a3,5)} is c-admissible", &mut failures);
    check(e(sem.is_one_directionally_attacked(&a123))?, "{(a1,4),(a2,3),(a3,5)} not one-directionally attacked", &mut failures);
    let verdict = sem.profitable(&a13, &a123).map_err(|e| e.to_string())?;
    check(verdict.holds, format!("{{(a1,4),(a3,5)}} ⊴ {{(a1,4),(a2,3),(a3,5)}} fails: {verdict:?}"), &mut failures);
    finish(failures, "5/5 statements match")
}

fn seven_formability() -> Outcome {
    let start = Instant::now();
    let fw = fixture("seven");
    let sem = fw.semantics();
    let base = arg_set([("a2", 2)]);
    let (a3, s1, s6, s7) = (("a3", 2), ("s1", 1), ("s6", 3), ("s7", 2));
    let w = sets(&[&[a3], &[s1], &[s6], &[s7], &[s1, s6], &[s1, s7], &[a3, s7]]);
    let m = sets(&[&[a3], &[s7], &[s1, s6], &[s1, s7], &[a3, s7]]);
    let ws = sets(&[&[a3], &[s1], &[s7], &[s1, s7], &[a3, s7]]);
    let expected = [(Formability::W, w), (Formability::M, m), (Formability::WS, ws.clone()), (Formability::S, ws)];
    let mut failures = Vec::new();
    for (kind, want) in expected {
        let got = sem.formability(kind, &base).map_err(|e| e.to_string())?.partners;
        if got != want {
            failures.push(format!("{kind}: got [{}], expected [{}]", show(&got), show(&want)));
        }
    }
    let took = within(start, Duration::from_secs(60), &mut failures);
    finish(failures, format!("W, M, WS and S exact ({took:?})"))
}

fn independence() -> Outcome {
    let mut failures = Vec::new();
    let cases = [
        ("indep-larger", "larger set", ["a1"].as_slice(), ["a1", "a2"].as_slice()),
        ("indep-state", "better state", &["s1"], &["s3"]),
        ("indep-fewer", "fewer attackers", &["s3"], &["s2"]),
    ];
    for (name, only, s1, s2) in cases {
        let fw = fixture(name);
        let v = fw.semantics().profitable(&set(&fw, s1), &set(&fw, s2)).map_err(|e| e.to_string())?;
        let got = [("larger set", v.larger_set), ("better state", v.better_state), ("fewer attackers", v.fewer_attackers)];
        let satisfied: Vec<&str> = got.iter().filter(|(_, b)| *b).map(|(n, _)| *n).collect();
        check(satisfied == [only], format!("{name}: satisfied {satisfied:?}, expected only {only}"), &mut failures);
    }
    finish(failures, "each fixture satisfies exactly its named axiom")
}

fn asymmetry_and_discontinuity() -> Outcome {
    let mut failures = Vec::new();
    let fw = fixture("asym");
    let sem = fw.semantics();
    let joined = set(&fw, &["s1", "a2"]);
    let one = sem.profitable(&set(&fw, &["s1"]), &joined).map_err(|e| e.to_string())?;
    check(one.holds, format!("{{s1}} ⊴ {{s1,(a2,2)}} fails: {one:?}"), &mut failures);
    let other = sem.profitable(&set(&fw, &["a2"]), &joined).map_err(|e| e.to_string())?;
    check(
        !other.holds && !other.fewer_attackers && other.larger_set && other.better_state,
        format!("{{(a2,2)}} ⊴ {{s1,(a2,2)}} should fail on fewer attackers only: {other:?}"),
        &mut failures,
    );

    let fw = fixture("disc");
    let sem = fw.semantics();
    let a1 = set(&fw, &["a1"]);
    let max = sem.max_sets(&a1).map_err(|e| e.to_string())?;
    check(max.contains(&set(&fw, &["a1", "a2", "s3"])), format!("Max({{(a1,2)}}) = [{}]", show(&max)), &mut failures);
    let step = sem.profitable(&a1, &set(&fw, &["a1", "a2"])).map_err(|e| e.to_string())?;
    check(!step.holds, "{(a1,2)} ⊴ {(a1,2),(a2,2)} holds", &mut failures);
    finish(failures, "one-sided profit and discontinuity reproduced")
}

const PROPERTY_THEOREMS: [Theorem; 8] =
    [Theorem::L1, Theorem::P2, Theorem::P4, Theorem::P5, Theorem::T2, Theorem::T3, Theorem::T4, Theorem::T10];

fn failures_on(fw: &Framework, label: &str, failures: &mut Vec<String>) -> Result<(), String> {
    for t in PROPERTY_THEOREMS {
        let report = check_theorem(fw, t).map_err(|e| format!("{label} {t}: {e}"))?;
        if report.verdict == Verdict::Fail {
            failures.push(format!(
                "{label} {t}: {} {}\nreplay: {}",
                report.counterexample.unwrap_or_default(),
                report.detail,
                io::to_string(fw)
            ));
        }
    }
    Ok(())
}

fn property_suite() -> Outcome {
    let mut failures = Vec::new();
    let mut frameworks = 0;
    for name in common::FIXTURES {
        failures_on(&fixture(name), name, &mut failures)?;
        frameworks += 1;
    }
    let aggregators = [Aggregator::Max, Aggregator::Sum, Aggregator::ExplicitOnly];
    for seed in 0..200u64 {
        let n = 1 + (seed % 6) as usize;
        let aggregator = aggregators[(seed / 6 % 3) as usize];
        let density = [0.25, 0.4, 0.6][(seed % 3) as usize];
        let spec = RandomModelSpec::new(n, density, seed).with_aggregator(aggregator);
        failures_on(&generate_random(&spec), &format!("seed {seed} ({n} args, {aggregator})"), &mut failures)?;
        frameworks += 1;
    }
    finish(failures, format!("8 statements, {frameworks} frameworks, no counterexample"))
}

fn names(sets: Vec<ArgSet>) -> BTreeSet<BTreeSet<String>> {
    sets.into_iter().map(|s| s.into_iter().map(|a| a.id).collect()).collect()
}

fn reduction() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for seed in 0..50u64 {
        let fw = generate_restricted(3 + (seed % 4) as usize, 0.35, seed);
        let report = check_reduction(&fw).map_err(|e| format!("seed {seed}: {e}"))?;
        check(report.ok, format!("seed {seed}: {report}"), &mut failures);
        let sem = fw.semantics();
        let np = NPFramework::from_framework(&fw);
        let pairs = [
            (NPKind::ConflictFree, sem.conflict_eliminable_sets()),
            (NPKind::Admissible, sem.c_admissible_sets()),
            (NPKind::Preferred, sem.c_preferred_sets()),
        ];
        for (kind, ours) in pairs {
            let ours = names(ours.map_err(|e| e.to_string())?);
            let theirs: BTreeSet<_> = cfsem::np_semantics(&np, kind).map_err(|e| e.to_string())?.into_iter().collect();
            check(ours == theirs, format!("seed {seed} {kind}: {ours:?} vs {theirs:?}"), &mut failures);
        }
    }
    let took = within(start, Duration::from_secs(30), &mut failures);
    finish(failures, format!("50 restricted frameworks agree set-for-set ({took:?})"))
}

fn oracle_equivalence() -> Outcome {
    let mut failures = Vec::new();
    let mut frameworks = Vec::new();
    for name in common::FIXTURES {
        frameworks.push((name.to_string(), fixture(name)));
    }
    for seed in 0..30u64 {
        let aggregator = [Aggregator::Max, Aggregator::Sum, Aggregator::ExplicitOnly][(seed % 3) as usize];
        let spec = RandomModelSpec::new(2 + (seed % 4) as usize, 0.4, 1000 + seed).with_aggregator(aggregator);
        frameworks.push((format!("random seed {}", spec.seed), generate_random(&spec)));
    }
    for (label, fw) in &frameworks {
        for m in oracle_mismatches(fw).map_err(|e| format!("{label}: {e}"))? {
            failures.push(format!("{label}: {m}"));
        }
    }
    finish(failures, format!("{} frameworks, evaluator and brute force identical", frameworks.len()))
}

fn goldens_and_round_trip() -> Outcome {
    let mut failures = Vec::new();
    let fw = fixture("ldp");
    let golden = |file: &str| std::fs::read_to_string(fixture_path("ldp").with_file_name("golden").join(file));
    let scopes = [
        ("ldp.dot", DotScope::Whole),
        ("ldp-view-a1-a3.dot", DotScope::ViewOf(arg_set([("a1", 4), ("a3", 5)]))),
        ("ldp-view-a1-a2-a3.dot", DotScope::ViewOf(arg_set([("a1", 4), ("a2", 3), ("a3", 5)]))),
    ];
    for (file, scope) in scopes {
        let want = golden(file).map_err(|e| format!("{file}: {e}"))?;
        let got = export_dot(&fw, &scope).map_err(|e| e.to_string())?;
        check(got == want, format!("{file} differs"), &mut failures);
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for name in common::FIXTURES {
        let fw = fixture(name);
        let path = dir.path().join(format!("{name}.json"));
        io::save(&fw, &path).map_err(|e| e.to_string())?;
        let back = io::load(&path).map_err(|e| e.to_string())?;
        check(back == fw, format!("{name} does not round-trip"), &mut failures);
    }
    finish(failures, "3 drawings match, all fixtures round-trip")
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("intrinsic arguments of the ldp coalitions", intrinsic_values),
        ("ldp attack, admissibility and profit statements", ldp_booleans),
        ("seven-argument formability sets", seven_formability),
        ("independence of the profitability axioms", independence),
        ("asymmetric profit and discontinuity", asymmetry_and_discontinuity),
        ("property suite", property_suite),
        ("reduction to group-attack frameworks", reduction),
        ("oracle equivalence", oracle_equivalence),
        ("DOT goldens and round-trip", goldens_and_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(msg) => println!("criterion {} PASS {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
