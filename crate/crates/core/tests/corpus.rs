use sgd_core::codec::{parse, serialize};
use sgd_core::corpus;
use sgd_core::{CrossingKind, Error};

fn crossing_sets(name: &str) -> Vec<usize> {
    let d = corpus::load(name).unwrap();
    let mut v: Vec<usize> = d.faces().iter().map(|f| f.crossings.len()).collect();
    v.sort();
    v
}

#[test]
fn every_fixture_passes_the_sphere_check() {
    for (name, d) in corpus::all() {
        let (lhs, rhs) = d.euler_characteristic_check();
        assert_eq!(lhs, rhs, "{name}");
        let corners: usize = d.faces().iter().map(|f| f.corners.len()).sum();
        let slots: usize = d.nodes().iter().map(|n| n.degree()).sum();
        assert_eq!(corners, slots, "{name}");
    }
}

#[test]
fn face_counts() {
    let count = |n: &str| corpus::load(n).unwrap().faces().len();
    assert_eq!(count("unknot0"), 2);
    assert_eq!(count("hopf"), 4);
    assert_eq!(count("trefoil"), 5);
    assert_eq!(count("t24"), 6);
    assert_eq!(count("theta0"), 3);
    assert_eq!(count("reduc1"), 3);
    assert_eq!(crossing_sets("hopf"), vec![2, 2, 2, 2]);
    assert_eq!(crossing_sets("trefoil"), vec![2, 2, 2, 3, 3]);
}

#[test]
fn strands_and_graphs() {
    let d = corpus::load("unknot0").unwrap();
    assert_eq!(d.strands().len(), 1);
    assert!(!d.strands()[0].is_closed());
    let d = corpus::load("hopf").unwrap();
    assert_eq!(d.strands().iter().filter(|s| s.is_closed()).count(), 2);
    assert_eq!(d.graph().vertices.len(), 0);
    assert_eq!(d.graph().component_count, 2);
    let d = corpus::load("handcuff0").unwrap();
    assert_eq!(d.strands().len(), 3);
    assert!(d.strands().iter().all(|s| !s.is_closed()));
    let d = corpus::load("theta0").unwrap();
    let g = d.graph();
    assert_eq!((g.vertices.len(), g.edges.len(), g.component_count), (2, 3, 1));
    assert!(g.vertices.iter().all(|&v| g.degree[v] == 3));
    let d = corpus::load("linked_triangles").unwrap();
    let g = d.graph();
    assert_eq!((g.vertices.len(), g.edges.len(), g.component_count), (6, 6, 2));
    assert!(g.vertices.iter().all(|&v| g.degree[v] == 2));
    let u1 = d.vertex_index("u1").unwrap();
    let v1 = d.vertex_index("v1").unwrap();
    assert_eq!(g.vertex_component[u1], Some(0));
    assert_eq!(g.vertex_component[v1], Some(1));
}

#[test]
fn crossing_classes() {
    let d = corpus::load("hopf").unwrap();
    let c = d.classify_crossing("x1").unwrap();
    assert_eq!(c.kind, CrossingKind::NonSelf(0, 1));
    assert!(!c.reducible);
    let d = corpus::load("handcuff0").unwrap();
    for x in ["x1", "x2"] {
        assert_eq!(d.classify_crossing(x).unwrap().kind, CrossingKind::SelfCrossing(0));
    }
    let d = corpus::load("reduc1").unwrap();
    let c = d.classify_crossing("x1").unwrap();
    assert_eq!(c.kind, CrossingKind::SelfCrossing(0));
    assert!(c.reducible);
    assert!(matches!(d.classify_crossing("x9"), Err(Error::UnknownCrossing(_))));
}

#[test]
fn planarity() {
    for (name, planar) in [("theta0", true), ("hopf", true), ("handcuff0", true), ("nonplanar_k5", false)] {
        assert_eq!(corpus::load(name).unwrap().is_planar_abstract(), planar, "{name}");
    }
}

#[test]
fn deleted_arc_leaves_a_dangling_half_edge() {
    let text = corpus::CORPUS.iter().find(|(n, _)| *n == "hopf").unwrap().1;
    let cut: String = text.lines().filter(|l| !l.starts_with("arc a1")).map(|l| format!("{l}\n")).collect();
    assert!(matches!(parse(&cut).unwrap_err().root(), Error::DanglingHalfEdge(_)));
}

#[test]
fn round_trip_is_exact() {
    for (name, d) in corpus::all() {
        let s = serialize(&d);
        let back = parse(&s).unwrap();
        assert!(back.same_as(&d), "{name}");
        assert_eq!(serialize(&back), s, "{name}");
    }
}

#[test]
fn rotated_slots_do_not_validate() {
    // swapping two slots of a crossing breaks the rotation system
    let bad = "crossing x1 : x1a x1b x1d x1c\ncrossing x2 : x2a x2b x2c x2d\narc a1 : x1c x2b\narc a2 : x2d x1a\narc b1 : x1d x2a\narc b2 : x2c x1b\n";
    assert!(matches!(parse(bad).unwrap_err().root(), Error::NonSpherical { .. }));
}
