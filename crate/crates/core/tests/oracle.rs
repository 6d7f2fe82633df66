use sgd_core::codec::{parse, serialize};
use sgd_core::corpus;
use sgd_core::oracle::*;
use sgd_core::Diagram;

fn load(name: &str) -> Diagram {
    corpus::load(name).unwrap()
}

#[test]
fn enumeration_of_small_fixtures() {
    let hopf = enumerate_targets(&load("hopf")).unwrap();
    assert_eq!(hopf.rank, 1);
    assert_eq!(hopf.achievable.len(), 2);
    assert!(hopf.reaches(&[]).is_some());
    let both = load("hopf").crossings();
    assert!(hopf.reaches(&both).is_some());
    assert!(hopf.reaches(&both[..1]).is_none());

    let t = load("trefoil");
    let en = enumerate_targets(&t).unwrap();
    assert_eq!(en.subsets, 1 << t.faces().len());
    assert_eq!(en.rank, 3);
    assert_eq!(en.achievable.len(), 8);
    for a in &en.achievable {
        assert_eq!(sgd_core::transform::region_effect(&t, &a.witness), a.crossings);
    }
    assert!(en.achievable[0].witness.is_empty());

    let u = enumerate_targets(&load("unknot0")).unwrap();
    assert_eq!(u.achievable.len(), 1);
    assert!(u.achievable[0].crossings.is_empty());
}

#[test]
fn enumeration_refuses_large_diagrams() {
    let d = (1..200).map(|s| random_diagram_sized(s, Profile::Link(3), 30)).find(|d| d.faces().len() > MAX_FACES).unwrap();
    assert!(matches!(enumerate_targets(&d), Err(sgd_core::Error::TooLarge(_))));
}

#[test]
fn generator_is_seeded_and_valid() {
    for profile in [Profile::Knot, Profile::Link(2), Profile::Link(3), Profile::EulerianGraph, Profile::NonEulerianGraph] {
        for seed in 0..25 {
            let d = random_diagram(seed, profile);
            assert_eq!(d, random_diagram(seed, profile));
            assert_eq!(parse(&serialize(&d)).unwrap(), d);
            let (lhs, rhs) = d.euler_characteristic_check();
            assert_eq!(lhs, rhs, "{profile} seed {seed}");
        }
    }
    for seed in 0..25 {
        let k = random_diagram(seed, Profile::Knot);
        assert_eq!(k.graph().component_count, 1);
        assert!(k.crossings().len() <= 8);
        assert_eq!(random_diagram(seed, Profile::Link(3)).graph().component_count, 3);
        let ne = random_diagram(seed, Profile::NonEulerianGraph);
        assert!(!sgd_core::invariants::eulerian_check(&ne).eulerian);
        assert!(sgd_core::invariants::eulerian_check(&random_diagram(seed, Profile::EulerianGraph)).eulerian);
    }
    assert_ne!(random_diagram(1, Profile::Knot), random_diagram(2, Profile::Knot));
}

#[test]
fn profiles_parse() {
    assert_eq!("link(4)".parse::<Profile>().unwrap(), Profile::Link(4));
    assert_eq!("non-eulerian-graph".parse::<Profile>().unwrap(), Profile::NonEulerianGraph);
    assert!("link(9)".parse::<Profile>().is_err());
    assert!("torus".parse::<Profile>().is_err());
}

#[test]
fn verification_rejects_a_tampered_target() {
    let d = load("t24");
    let w = sgd_core::decide::witness_splittable(&d).unwrap();
    let mut p = w.plan().unwrap().clone();
    assert!(verify_witness(&d, &p).unwrap().pass);
    p.target.pop();
    let v = verify_witness(&d, &p).unwrap();
    assert!(!v.pass);
    assert_eq!(v.diff.len(), 1);
}

#[test]
fn a_wrong_expectation_is_reported() {
    let mut cases = corpus_cases();
    let hopf = cases.iter_mut().find(|c| c.name == "hopf").unwrap();
    hopf.expect_splittable = Some(true);
    let r = check_theorems(&cases, 12, 1);
    assert_eq!(r.failures(), vec![("hopf".to_string(), "expected-verdict".to_string())]);
    assert_eq!(r.theorem_violations, 0);
}

#[test]
fn generated_knots_pass_every_check() {
    let r = check_theorems(&generated_cases(100, Profile::Knot, 100), 12, 7);
    assert!(r.ok(), "{:?}", r.failures());
    assert!(r.diagrams.iter().all(|d| d.claims.iter().any(|c| c.name == "knot-full-rank")));
}

#[test]
fn generated_graphs_pass_every_check() {
    for profile in [Profile::EulerianGraph, Profile::Link(2), Profile::NonEulerianGraph] {
        let r = check_theorems(&generated_cases(1, profile, 20), 12, 3);
        assert!(r.ok(), "{profile}: {:?}", r.failures());
    }
}

/// Counting a face once per corner instead of once per crossing: only the
/// reducible crossing of REDUC1 tells the two apart.
#[test]
fn corner_counting_differs_only_at_the_reducible_crossing() {
    let d = load("reduc1");
    let x = d.crossings()[0];
    assert!(d.is_reducible(x));
    let by_set: Vec<bool> = d.faces().iter().map(|f| f.crossings.contains(&x)).collect();
    let by_corners: Vec<bool> = d.faces().iter().map(|f| f.corners.iter().filter(|c| c.node == x).count() % 2 == 1).collect();
    assert_eq!(by_set, vec![true; d.faces().len()]);
    assert_eq!(by_corners.iter().filter(|&&b| !b).count(), 1);
    for name in ["trefoil", "t24", "hopf", "handcuff0"] {
        let d = load(name);
        for f in d.faces() {
            for &x in &f.crossings {
                assert_eq!(f.corners.iter().filter(|c| c.node == x).count(), 1, "{name}");
            }
        }
    }
}
