use sgd_core::corpus;
use sgd_core::decide::*;
use sgd_core::oracle::{random_diagram, verify_witness, Profile};
use sgd_core::transform::apply_crossing_changes;
use sgd_core::{Diagram, Error};

fn load(name: &str) -> Diagram {
    corpus::load(name).unwrap()
}

fn ids(d: &Diagram, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| d.node(x).id.clone()).collect()
}

#[test]
fn verdict_table() {
    let s = |n: &str| decide_splittable(&load(n));
    let u = |n: &str| decide_unknottable(&load(n));
    let theta = u("theta0").unwrap();
    assert!(theta.answer);
    assert_eq!(theta.reason, Reason::NonEulerian);
    let tri = u("linked_triangles").unwrap();
    assert!(!tri.answer);
    assert_eq!(tri.reason, Reason::EulerianImproper);
    let t24 = s("t24");
    assert!(t24.answer);
    assert_eq!(t24.reason, Reason::EulerianProper);
    assert_eq!(u("nonplanar_k5"), Err(Error::NonPlanarGraph));
    assert!(s("nonplanar_k5").answer);
    let hopf = s("hopf");
    assert!(!hopf.answer);
    let cert = hopf.certificate.unwrap();
    assert!(cert.row_sums.iter().all(|r| r.rem_euclid(2) == 1));
}

#[test]
fn split_targets() {
    let hopf = load("hopf");
    assert_eq!(split_target(&hopf, &[0, 1]).change.len(), 1);
    let unlink = load("unlink2x");
    assert_eq!(split_target(&unlink, &[0, 1]).change.len(), 2);
    assert!(split_target(&load("trefoil"), &[0]).change.is_empty());
    // reversing the order picks the complementary crossings
    let t = load("t24");
    let a = split_target(&t, &[0, 1]);
    let b = split_target(&t, &[1, 0]);
    assert_eq!(a.change.len() + b.change.len(), a.care.len());
}

/// Whether walking from the start of `arc` meets every self-crossing of
/// `comp` first on the over strand.
fn descending_from(d: &Diagram, arc: &str, forward: bool) -> bool {
    let t = descending_target(d, 0, arc, forward).unwrap();
    t.is_empty()
}

#[test]
fn descending_targets_on_trefoil() {
    let d = load("trefoil");
    for a in d.arcs() {
        for fwd in [true, false] {
            let t = descending_target(&d, 0, &a.id, fwd).unwrap();
            assert!((1..=2).contains(&t.len()), "{t:?}");
            let e = apply_crossing_changes(&d, &ids(&d, &t)).unwrap();
            assert!(descending_from(&e, &a.id, fwd));
        }
    }
    assert!(descending_target(&load("unknot0"), 0, &load("unknot0").arcs()[0].id, true).unwrap().is_empty());
    assert!(matches!(descending_target(&load("theta0"), 0, &load("theta0").arcs()[0].id, true), Err(Error::NotAKnotComponent(0))));
}

#[test]
fn unknot_targets() {
    let tri = load("linked_triangles");
    for c in 0..2 {
        assert!(unknot_target(&tri, c).unwrap().is_empty());
    }
    let tre = load("trefoil");
    assert_eq!(unknot_target(&tre, 0).unwrap(), descending_target(&tre, 0, &tre.arcs().iter().map(|a| a.id.clone()).min().unwrap(), true).unwrap());
    assert!(unknot_target(&load("handcuff0"), 0).is_ok());
    assert_eq!(unknot_target(&load("nonplanar_k5"), 0), Err(Error::NonPlanarGraph));
}

fn check_plan(d: &Diagram, w: &Witness) {
    let p = w.plan().expect("a plan");
    let v = verify_witness(d, p).unwrap();
    assert!(v.pass, "{v:?}\n{p:?}");
}

#[test]
fn splittable_witnesses_on_corpus() {
    for n in ["t24", "unlink2x", "theta0", "handcuff0", "trefoil", "unknot0", "reduc1", "nonplanar_k5"] {
        let d = load(n);
        let w = witness_splittable(&d).unwrap();
        check_plan(&d, &w);
        if eulerian(&d) {
            assert!(w.plan().unwrap().script.is_empty(), "{n}");
        }
    }
    for n in ["hopf", "linked_triangles"] {
        assert!(matches!(witness_splittable(&load(n)).unwrap(), Witness::Impossible(_)));
    }
}

fn eulerian(d: &Diagram) -> bool {
    sgd_core::invariants::eulerian_check(d).eulerian
}

#[test]
fn unknottable_witnesses_on_corpus() {
    for n in ["trefoil", "t24", "unlink2x", "theta0", "handcuff0", "unknot0", "reduc1"] {
        let d = load(n);
        check_plan(&d, &witness_unknottable(&d).unwrap());
    }
    assert!(matches!(witness_unknottable(&load("linked_triangles")).unwrap(), Witness::Impossible(_)));
    assert!(witness_unknottable(&load("theta0")).unwrap().plan().unwrap().regions.is_empty());
    assert_eq!(witness_unknottable(&load("nonplanar_k5")), Err(Error::NonPlanarGraph));
}

#[test]
fn dropping_a_region_breaks_a_plan() {
    let d = load("t24");
    let mut p = witness_splittable(&d).unwrap().plan().unwrap().clone();
    assert!(!p.regions.is_empty());
    p.regions.pop();
    assert!(!verify_witness(&d, &p).unwrap().pass);
}

#[test]
fn plans_round_trip_through_json() {
    let d = load("handcuff0");
    let w = witness_splittable(&d).unwrap();
    let s = serde_json::to_string(&w).unwrap();
    let back: Witness = serde_json::from_str(&s).unwrap();
    assert_eq!(back, w);
}

#[test]
fn generated_non_eulerian_plans_verify() {
    let mut sources = std::collections::BTreeMap::new();
    let mut scripted = 0;
    for seed in 1..=50 {
        let d = random_diagram(seed, Profile::NonEulerianGraph);
        for w in [witness_splittable(&d), witness_unknottable(&d)] {
            let w = w.unwrap_or_else(|e| panic!("seed {seed}: {e}\n{d}"));
            let p = w.plan().unwrap();
            let v = verify_witness(&d, p).unwrap();
            assert!(v.pass, "seed {seed}: {v:?}\n{p:?}\n{d}");
            *sources.entry(format!("{:?}/{}", p.regions_source, p.script.len().min(2))).or_insert(0) += 1;
            scripted += p.script.iter().any(|s| matches!(s, ScriptStep::Gadget { .. })) as usize;
        }
    }
    eprintln!("{sources:?}, with gadgets {scripted}");
    assert!(scripted > 0);
}

#[test]
fn two_gadget_plans_verify() {
    let mut found = 0;
    for seed in 1..400 {
        let d = random_diagram(seed, Profile::NonEulerianGraph);
        let w = witness_unknottable(&d).unwrap();
        let p = w.plan().unwrap();
        if p.script.iter().filter(|s| matches!(s, ScriptStep::Gadget { .. })).count() < 2 {
            continue;
        }
        assert!(verify_witness(&d, p).unwrap().pass, "seed {seed}");
        found += 1;
        if found == 10 {
            break;
        }
    }
    assert_eq!(found, 10);
}
