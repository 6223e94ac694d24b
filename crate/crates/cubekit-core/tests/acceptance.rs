//! Acceptance suite: every structural theorem the library implements is
//! verified exhaustively at small-instance bounds, with one pass/fail line
//! per criterion (run with `--nocapture` to see them).

use std::time::{Duration, Instant};

use cubekit_core::classify::{classify, ClassKind, ClassWitness};
use cubekit_core::one_inclusion::{build_graph, is_well_graded};
use cubekit_core::oracle::{
    graph_checks, run_graph_check, run_system_check, system_checks, SystemCheck, TheoremCheck,
};
use cubekit_core::set_system::SetSystem;
use cubekit_core::shattering::{check_sandwich, vc_dimension};
use cubekit_core::Caps;

fn semitree_13() -> SetSystem {
    SetSystem::from_names(
        &["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"],
        &[
            &["a"],
            &["a", "b"],
            &["a", "b", "c"],
            &["a", "c"],
            &["a", "c", "e"],
            &["a", "c", "e", "f"],
            &["a", "c", "e", "g"],
            &["a", "h"],
            &["a", "b", "c", "d"],
            &["a", "b", "i"],
            &["a", "b", "j"],
            &["a", "b", "j", "k"],
            &["a", "b", "j", "l"],
        ],
    )
    .unwrap()
}

fn report(name: &str, ok: bool, detail: &str) {
    println!(
        "acceptance {name}: {} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "{name}: {detail}");
}

fn system_check_by_id(id: &str) -> SystemCheck {
    system_checks()
        .into_iter()
        .find(|c| c.id == id)
        .expect("known check id")
}

fn summarize(outcome: &TheoremCheck) -> String {
    if outcome.passed() {
        format!("{} instances, zero counterexamples", outcome.instances)
    } else {
        format!(
            "{} instances, {} counterexample(s), first: {} -- {}",
            outcome.instances,
            outcome.failures.len(),
            outcome.failures[0].instance,
            outcome.failures[0].detail
        )
    }
}

fn run_system_criterion(name: &str, id: &str, max_n: usize, budget: Duration) {
    let start = Instant::now();
    let outcome = run_system_check(&system_check_by_id(id), max_n).unwrap();
    let elapsed = start.elapsed();
    let ok = outcome.passed() && elapsed < budget;
    report(name, ok, &format!("{}, {elapsed:.2?}", summarize(&outcome)));
}

fn run_graph_criterion(name: &str, id: &str, max_k: usize, budget: Duration) {
    let start = Instant::now();
    let check = graph_checks()
        .into_iter()
        .find(|c| c.id == id)
        .expect("known check id");
    let outcome = run_graph_check(&check, max_k).unwrap();
    let elapsed = start.elapsed();
    let ok = outcome.passed() && elapsed < budget;
    report(name, ok, &format!("{}, {elapsed:.2?}", summarize(&outcome)));
}

#[test]
fn a01_worked_semitree_example() {
    let start = Instant::now();
    let s = semitree_13();
    let caps = Caps::default();

    assert_eq!(s.family_size(), 13);
    assert_eq!(s.essential_mask().len(), 11);
    assert_eq!(s.additionality(), 2);
    assert!(is_well_graded(&s));
    assert_eq!(vc_dimension(&s, &caps).unwrap(), 2);

    let g = build_graph(&s);
    assert_eq!(g.vertex_count(), 13);
    assert_eq!(g.edge_count(), 13);

    // exact edge list: (source, label, target)
    let expected = [
        ("{a}", "c", "{a,c}"),
        ("{a}", "b", "{a,b}"),
        ("{a,c}", "b", "{a,b,c}"),
        ("{a,b}", "c", "{a,b,c}"),
        ("{a,c}", "e", "{a,c,e}"),
        ("{a,c,e}", "g", "{a,c,e,g}"),
        ("{a,c,e}", "f", "{a,c,e,f}"),
        ("{a,b,c}", "d", "{a,b,c,d}"),
        ("{a}", "h", "{a,h}"),
        ("{a,b}", "i", "{a,b,i}"),
        ("{a,b}", "j", "{a,b,j}"),
        ("{a,b,j}", "k", "{a,b,j,k}"),
        ("{a,b,j}", "l", "{a,b,j,l}"),
    ];
    let mut actual: Vec<(String, String, String)> = g
        .edges()
        .iter()
        .map(|e| {
            (
                s.render_member(g.st(e.source)),
                g.label_name(e.label).to_string(),
                s.render_member(g.st(e.target)),
            )
        })
        .collect();
    let mut expected: Vec<(String, String, String)> = expected
        .iter()
        .map(|(a, l, b)| (a.to_string(), l.to_string(), b.to_string()))
        .collect();
    actual.sort();
    expected.sort();
    assert_eq!(actual, expected);

    // labels b and c appear twice, d through l once each
    let mut label_counts = std::collections::BTreeMap::new();
    for e in g.edges() {
        *label_counts
            .entry(g.label_name(e.label).to_string())
            .or_insert(0usize) += 1;
    }
    for (label, count) in &label_counts {
        let expect = if label == "b" || label == "c" { 2 } else { 1 };
        assert_eq!(*count, expect, "label {label}");
    }

    let c = classify(&s);
    assert_eq!(c.kind, ClassKind::Semitree);
    match c.witness {
        Some(ClassWitness::Cycle(w)) => {
            let mut cycle: Vec<String> =
                w.cycle.iter().map(|&v| s.render_member(g.st(v))).collect();
            cycle.sort();
            assert_eq!(cycle, ["{a,b,c}", "{a,b}", "{a,c}", "{a}"]);
            let mut labels = [
                g.label_name(w.labels.0).to_string(),
                g.label_name(w.labels.1).to_string(),
            ];
            labels.sort();
            assert_eq!(labels, ["b", "c"]);
        }
        other => panic!("expected a cycle witness, got {other:?}"),
    }

    let elapsed = start.elapsed();
    report(
        "01 worked-semitree-example",
        elapsed < Duration::from_secs(1),
        &format!("thirteen members, eleven essential elements, semitree, {elapsed:.2?}"),
    );
}

#[test]
fn a02_nine_way_equivalence() {
    run_system_criterion(
        "02 nine-way-equivalence",
        "thm-nine-equivalences",
        4,
        Duration::from_secs(60),
    );
}

#[test]
fn a03_additionality_two_characterization() {
    run_system_criterion(
        "03 additionality-two-semitree",
        "thm-additionality-2",
        4,
        Duration::from_secs(60),
    );
    run_system_criterion(
        "03 vc-additionality",
        "rem-vc-add2",
        4,
        Duration::from_secs(60),
    );
}

#[test]
fn a04_sandwich_and_extremal_agreement() {
    run_system_criterion(
        "04 sandwich-sauer-shelah",
        "sandwich",
        4,
        Duration::from_secs(60),
    );
    // the inequalities are asserted inside check_sandwich as well
    let s = semitree_13();
    let triple = check_sandwich(&s, &Caps::default()).unwrap();
    assert_eq!(triple, (13, 13, 13));
}

#[test]
fn a05_main_duality_theorem() {
    run_system_criterion(
        "05 self-and-dual-characterization",
        "thm-selfdual-char",
        4,
        Duration::from_secs(120),
    );
    run_system_criterion(
        "05 self-and-ess-dual-characterization",
        "thm-selfessdual-char",
        4,
        Duration::from_secs(120),
    );
}

#[test]
fn a06_self_and_dual_maximum_corollary() {
    run_system_criterion(
        "06 self-and-dual-maximum",
        "cor-selfdual-max",
        4,
        Duration::from_secs(60),
    );
    run_system_criterion(
        "06 self-and-dual-extremal",
        "cor-selfdual-extremal",
        4,
        Duration::from_secs(60),
    );
}

#[test]
fn a07_half_graph_theorem() {
    run_graph_criterion(
        "07 half-graph-theorem",
        "thm-halfgraph",
        6,
        Duration::from_secs(120),
    );
}

#[test]
fn a08_closed_neighbourhood_theorem() {
    run_graph_criterion(
        "08 closed-half-graph-theorem",
        "thm-closed-halfgraph",
        6,
        Duration::from_secs(120),
    );
}

#[test]
fn a09_clique_and_independent_systems() {
    run_graph_criterion(
        "09 clique-independent",
        "rem-clique-indep",
        5,
        Duration::from_secs(60),
    );
}

#[test]
fn a10_lemma_level_properties() {
    for (name, id) in [
        ("10 below-bounds", "lemma-below"),
        ("10 shattered-label-counts", "rem-shattered-labels"),
        ("10 cut-set-structure", "rem-cutset"),
        ("10 second-dual-purification", "rem-second-dual"),
        ("10 complement-dual-commutation", "rem-complement-dual"),
    ] {
        run_system_criterion(name, id, 4, Duration::from_secs(120));
    }
}

#[test]
fn full_battery_stays_green() {
    // everything else the harness knows about, at the same bounds
    let bounds = cubekit_core::CheckBounds {
        max_system_domain: 4,
        max_graph_vertices: 6,
    };
    let checks = cubekit_core::oracle::run_all_checks(&bounds).unwrap();
    for check in &checks {
        report(
            &format!("battery {}", check.check_id),
            check.passed(),
            &summarize(check),
        );
    }
}
