mod common;

use cfsem::dot::{export_dot, DotScope};
use cfsem::oracle::{check_all, check_theorem, Theorem, Verdict};
use cfsem::{arg_set, framework, io, Aggregator, Criterion, Formability, StateRank, StrengthModel, VariantPolicy};

use common::{fixture, set, FIXTURES};

#[test]
fn every_fixture_validates_and_passes_its_theorem_checks() {
    for name in FIXTURES {
        let fw = fixture(name);
        assert!(fw.validate_axioms().ok, "{name}");
        for report in check_all(&fw, name).unwrap() {
            assert_ne!(report.verdict, Verdict::Fail, "{name}: {report:?}");
        }
    }
}

#[test]
fn every_conflict_eliminable_view_resolves() {
    for name in FIXTURES {
        let fw = fixture(name);
        let sem = fw.semantics();
        for s in sem.conflict_eliminable_sets().unwrap() {
            sem.view(&s).unwrap_or_else(|e| panic!("{name} view of {}: {e}", cfsem::display_set(&s)));
        }
    }
}

#[test]
fn ldp_views_and_states() {
    let fw = fixture("ldp");
    let sem = fw.semantics();
    let a13 = set(&fw, &["a1", "a3"]);
    let view = sem.view(&a13).unwrap();
    assert_eq!(view.arguments, arg_set([("a1", 1), ("a2", 3), ("a3", 2), ("a4", 1)]));
    assert_eq!(sem.state_rank(&a13).unwrap(), StateRank::OneDirectional);
    let a123 = set(&fw, &["a1", "a2", "a3"]);
    assert_eq!(sem.state_rank(&a123).unwrap(), StateRank::OneDirectional);
    assert!(!sem.is_conflict_eliminable(&set(&fw, &["a3", "a4"])).unwrap());
}

/// Edge list transcribed by hand from the attack arrows of the three drawings.
#[test]
fn ldp_drawings_have_the_expected_edges() {
    let fw = fixture("ldp");
    let edges = |scope| {
        let dot = export_dot(&fw, &scope).unwrap();
        let mut e: Vec<String> = dot.lines().filter(|l| l.contains("->")).map(|l| l.trim().to_string()).collect();
        e.sort();
        e
    };
    assert_eq!(
        edges(DotScope::Whole),
        [
            r#""(a1,4)" -> "(a3,5)" [label="3"];"#,
            r#""(a2,3)" -> "(a3,5)" [label="1"];"#,
            r#""(a3,5)" -> "(a1,4)" [label="3"];"#,
            r#""(a3,5)" -> "(a2,3)" [label="2"];"#,
            r#""(a3,5)" -> "(a4,1)" [label="1"];"#,
            r#""(a4,1)" -> "(a3,5)" [label="1"];"#,
        ]
    );
    assert_eq!(
        edges(DotScope::ViewOf(set(&fw, &["a1", "a3"]))),
        [r#""(a2,3)" -> "(a3,2)" [label="1"];"#, r#""(a3,2)" -> "(a2,3)" [label="1"];"#]
    );
    assert!(edges(DotScope::ViewOf(set(&fw, &["a1", "a2", "a3"]))).is_empty());
}

#[test]
fn seven_preferred_and_maximal_profit_facts() {
    let fw = fixture("seven");
    let sem = fw.semantics();
    assert_eq!(sem.c_preferred_sets().unwrap(), vec![set(&fw, &["a2", "a3", "s7"]), set(&fw, &["a2", "s1", "s7"])]);
    for (s1, s2) in [
        (&["a3"][..], &["a2", "a3", "s7"][..]),
        (&["s1"], &["s1", "a2", "s7"]),
        (&["s7"], &["s1", "a2", "s7"]),
        (&["s7"], &["a2", "a3", "s7"]),
    ] {
        assert!(sem.max_profitable(&set(&fw, s1), &set(&fw, s2)).unwrap(), "{s1:?} ⊴m {s2:?}");
    }
    let blocked = set(&fw, &["s1", "a2", "s6"]);
    for better in [&["a2", "a3", "s7"][..], &["s1", "a2", "s7"], &["s1", "s4", "s5", "s6"]] {
        assert!(sem.crit_lt(Criterion::Attackers, &blocked, &set(&fw, better)).unwrap(), "{better:?}");
    }
    assert!(sem.max_sets(&set(&fw, &["s1", "s6"])).unwrap().contains(&set(&fw, &["s1", "s4", "s5", "s6"])));
}

#[test]
fn seven_relations_between_the_four_semantics() {
    let fw = fixture("seven");
    let sem = fw.semantics();
    let base = set(&fw, &["a2"]);
    let get = |k| sem.formability(k, &base).unwrap().partners;
    let (w, m, ws, s) = (get(Formability::W), get(Formability::M), get(Formability::WS), get(Formability::S));
    let within = |a: &Vec<_>, b: &Vec<_>| a.iter().all(|x| b.contains(x));
    assert!(within(&m, &w) && within(&ws, &w) && within(&s, &m) && within(&s, &ws));
    // Neither of M and WS contains the other here.
    assert!(!within(&m, &ws) && !within(&ws, &m));
    // {s1} is weakly stable but not mutually profitable, so it cannot be stable.
    let s1 = set(&fw, &["s1"]);
    assert!(ws.contains(&s1) && !m.contains(&s1) && !s.contains(&s1));
}

#[test]
fn independence_fixtures_verdicts() {
    let fw = fixture("indep-larger");
    let v = fw.semantics().profitable(&set(&fw, &["a1"]), &set(&fw, &["a1", "a2"])).unwrap();
    assert_eq!((v.larger_set, v.better_state, v.fewer_attackers), (true, false, false));
    assert_eq!(v.attacker_counts, (1, 2));
}

/// With only the three drawn arguments, `{(a1,2)}` c-defeats `s3` but not
/// `(a2,2)`, which attacks it back with strength 1. Both sides then face one
/// undefeated external attacker and fewer-attackers holds. The fixture adds
/// `s4`, which only `{(a1,2)}` defeats, to break the tie.
#[test]
fn three_argument_larger_set_case_also_has_fewer_attackers() {
    let text = std::fs::read_to_string(common::fixture_path("indep-larger")).unwrap();
    let mut doc = io::parse_document(&text).unwrap();
    doc.arguments.retain(|a| a.id != "s4");
    doc.attacks.retain(|e| e.to.0 != "s4" && e.from.iter().all(|(id, _)| id != "s4"));
    let fw = doc.into_framework().unwrap();
    let v = fw.semantics().profitable(&set(&fw, &["a1"]), &set(&fw, &["a1", "a2"])).unwrap();
    assert_eq!((v.larger_set, v.better_state, v.fewer_attackers), (true, false, true));
    assert_eq!(v.attacker_counts, (1, 1));
}

#[test]
fn discontinuity_fixture() {
    let fw = fixture("disc");
    let sem = fw.semantics();
    let a1 = set(&fw, &["a1"]);
    assert!(!sem.is_weakly_continuous(&a1).unwrap());
    assert!(sem.max_sets(&a1).unwrap().contains(&set(&fw, &["a1", "a2", "s3"])));
}

#[test]
fn fixtures_round_trip_through_text() {
    for name in FIXTURES {
        let fw = fixture(name);
        assert_eq!(io::parse(&io::to_string(&fw)).unwrap(), fw, "{name}");
    }
}

/// Weak continuity only asks for some maximal coalition, which need not lie
/// inside the c-preferred set. Here `{}` is weakly continuous through `{a2}`
/// while `{} ⊴ {a3}` fails, so pairwise profitability inside `{a1,a3}` does
/// not follow from continuity of its subsets.
#[test]
fn continuity_of_subsets_does_not_give_pairwise_profit() {
    let model = StrengthModel::new(Aggregator::Max, VariantPolicy::Persist)
        .with(("a1", 1), ("a2", 1), 1)
        .with(("a2", 1), ("a1", 1), 1)
        .with(("a2", 1), ("a3", 1), 1);
    let fw = framework(&[("a1", 1), ("a2", 1), ("a3", 1)], model).unwrap();
    let sem = fw.semantics();
    let x = set(&fw, &["a1", "a3"]);
    assert!(sem.c_preferred_sets().unwrap().contains(&x));
    for s1 in [&[][..], &["a1"], &["a3"]] {
        assert!(sem.is_weakly_continuous(&set(&fw, s1)).unwrap(), "{s1:?}");
    }
    assert!(!sem.profitable(&set(&fw, &[]), &set(&fw, &["a3"])).unwrap().holds);
    let report = check_theorem(&fw, Theorem::T9).unwrap();
    assert_eq!(report.verdict, Verdict::Fail);
    assert_eq!(report.counterexample.as_deref(), Some("Sx = {(a1,1),(a3,1)}"));
}

/// `{a1}` is one-directionally attacked by the partial attack of `a3`, so it
/// profits from any larger conflict-eliminable set that does not add
/// undefeated attackers, c-admissible or not. `{a1,a3,a4}` is such a strict
/// superset of the c-preferred `{a1,a3}`.
#[test]
fn c_preferred_sets_can_have_profitable_strict_supersets() {
    let model = StrengthModel::new(Aggregator::Max, VariantPolicy::Persist)
        .with(("a1", 2), ("a2", 2), 2)
        .with(("a1", 1), ("a2", 2), 1)
        .with(("a1", 2), ("a4", 2), 1)
        .with(("a2", 2), ("a4", 2), 3)
        .with(("a3", 1), ("a1", 2), 1)
        .with(("a3", 1), ("a2", 2), 1);
    let fw = framework(&[("a1", 2), ("a2", 2), ("a3", 1), ("a4", 2)], model).unwrap();
    assert!(fw.validate_axioms().ok);
    let sem = fw.semantics();
    let (s1, x, y) = (set(&fw, &["a1"]), set(&fw, &["a1", "a3"]), set(&fw, &["a1", "a3", "a4"]));
    assert_eq!(sem.pref_supersets(&s1).unwrap(), vec![x.clone()]);
    assert!(sem.profitable(&s1, &x).unwrap().holds);
    assert_eq!(sem.state_rank(&s1).unwrap(), StateRank::OneDirectional);
    assert!(sem.is_conflict_eliminable(&y).unwrap() && !sem.is_c_admissible(&y).unwrap());
    assert!(sem.profitable(&s1, &y).unwrap().holds);
    let report = check_theorem(&fw, Theorem::T4).unwrap();
    assert_eq!(report.verdict, Verdict::Fail);
    assert_eq!(report.detail, "S1 profits from a strict superset of Sx");
}

#[test]
fn schema_enums_match_the_loader() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schema/framework.schema.json")).unwrap();
    let schema: serde_json::Value = serde_json::from_str(&text).unwrap();
    let props = &schema["properties"];
    let values = |key: &str| -> Vec<String> {
        props[key]["enum"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect()
    };
    assert_eq!(values("aggregator"), ["max", "sum", "explicit-only"]);
    assert_eq!(values("variantPolicy"), ["strict", "persist"]);
    assert_eq!(values("mode"), ["weighted", "nielsen-parsons"]);
    for a in values("aggregator") {
        for p in values("variantPolicy") {
            let doc = format!(r#"{{"version":"1","aggregator":"{a}","variantPolicy":"{p}","arguments":[],"attacks":[]}}"#);
            io::parse(&doc).unwrap();
        }
    }
}
