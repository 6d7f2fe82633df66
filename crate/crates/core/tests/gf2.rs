use std::collections::BTreeSet;

use sgd_core::corpus;
use sgd_core::gf2::*;
use sgd_core::Diagram;

/// Crossings flipped by a region set, straight from the face boundaries.
fn flips(d: &Diagram, regions: &[usize]) -> BTreeSet<usize> {
    let mut s = BTreeSet::new();
    for &f in regions {
        for &x in &d.face(f).crossings {
            if !s.insert(x) {
                s.remove(&x);
            }
        }
    }
    s
}

/// Every achievable target, by walking all subsets of faces.
fn achievable(d: &Diagram) -> BTreeSet<BTreeSet<usize>> {
    let n = d.faces().len();
    (0u32..1 << n).map(|mask| flips(d, &(0..n).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())).collect()
}

fn ids(d: &Diagram, xs: &[&str]) -> Vec<usize> {
    crossings_by_id(d, xs).unwrap()
}

#[test]
fn matrix_shapes_and_ranks() {
    let d = corpus::load("hopf").unwrap();
    let m = incidence_matrix(&d);
    assert_eq!((m.rows.len(), m.faces), (2, 4));
    assert!(m.rows.iter().all(|r| r.count_ones() == 4));
    assert_eq!(m.rank(), 1);
    assert_eq!(kernel_basis(&m).len(), 3);
    let d = corpus::load("trefoil").unwrap();
    let m = incidence_matrix(&d);
    assert_eq!((m.rows.len(), m.faces, m.rank()), (3, 5, 3));
    assert_eq!(kernel_basis(&m).len(), 2);
    let m = incidence_matrix(&corpus::load("unknot0").unwrap());
    assert_eq!((m.rows.len(), m.faces), (0, 2));
    assert_eq!(kernel_basis(&m).len(), 2);
}

#[test]
fn hopf_solves() {
    let d = corpus::load("hopf").unwrap();
    let m = incidence_matrix(&d);
    let x1 = ids(&d, &["x1"]);
    match solve(&m, &x1).unwrap() {
        SolveOutcome::Unsat { certificate } => assert_eq!(certificate, ids(&d, &["x1", "x2"])),
        other => panic!("{other:?}"),
    }
    let both = ids(&d, &["x1", "x2"]);
    let r = solve(&m, &both).unwrap();
    assert_eq!(r.regions().unwrap().len(), 1);
    match solve_with_dont_care(&m, &x1, &x1).unwrap() {
        SolveOutcome::Sat { regions, induced } => {
            assert_eq!(regions.len(), 1);
            assert_eq!(induced, ids(&d, &["x2"]));
        }
        other => panic!("{other:?}"),
    }
    assert!(!solve_with_dont_care(&m, &x1, &both).unwrap().is_sat());
    match solve_with_dont_care(&m, &[], &[]).unwrap() {
        SolveOutcome::Sat { regions, .. } => assert!(regions.is_empty()),
        other => panic!("{other:?}"),
    }
    assert!(solve(&m, &[99]).is_err());
}

#[test]
fn trefoil_single_crossing() {
    let d = corpus::load("trefoil").unwrap();
    let m = incidence_matrix(&d);
    let x1 = ids(&d, &["x1"]);
    let r = solve(&m, &x1).unwrap();
    let regions = r.regions().unwrap();
    assert_eq!(flips(&d, regions), x1.iter().copied().collect());
    // one outer-type face (all three crossings) plus the bigon avoiding x1
    let light = min_weight(&m, regions).unwrap();
    assert_eq!(light.len(), 2);
    let sizes: BTreeSet<usize> = light.iter().map(|&f| d.face(f).crossings.len()).collect();
    assert_eq!(sizes, [2, 3].into_iter().collect());
}

#[test]
fn solver_agrees_with_enumeration_on_every_target() {
    for (name, d) in corpus::all() {
        if d.faces().len() > 12 {
            continue;
        }
        let m = incidence_matrix(&d);
        let good = achievable(&d);
        let xs = d.crossings();
        for mask in 0u32..1 << xs.len() {
            let t: Vec<usize> = (0..xs.len()).filter(|i| mask >> i & 1 == 1).map(|i| xs[i]).collect();
            let tset: BTreeSet<usize> = t.iter().copied().collect();
            match solve(&m, &t).unwrap() {
                SolveOutcome::Sat { regions, .. } => assert_eq!(flips(&d, &regions), tset, "{name}"),
                SolveOutcome::Unsat { certificate } => {
                    assert!(!good.contains(&tset), "{name}");
                    let odd = certificate.iter().filter(|x| tset.contains(x)).count() % 2 == 1;
                    assert!(odd, "{name}");
                    for f in 0..d.faces().len() {
                        let hits = certificate.iter().filter(|x| d.face(f).crossings.contains(x)).count();
                        assert_eq!(hits % 2, 0, "{name}");
                    }
                }
            }
        }
        assert_eq!(good.len(), 1 << m.rank(), "{name}");
    }
}

#[test]
fn kernel_elements_change_nothing() {
    for (name, d) in corpus::all() {
        let m = incidence_matrix(&d);
        let k = kernel_basis(&m);
        assert_eq!(k.len() + m.rank(), d.faces().len(), "{name}");
        for v in k {
            assert!(flips(&d, &v).is_empty(), "{name}");
        }
    }
}
