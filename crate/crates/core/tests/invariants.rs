use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sgd_core::corpus;
use sgd_core::invariants::*;

fn lk(name: &str) -> Vec<Vec<i64>> {
    let d = corpus::load(name).unwrap();
    linking_matrix(&d, &eulerian_orientation(&d).unwrap()).unwrap().lk
}

#[test]
fn linking_numbers_of_the_fixtures() {
    assert_eq!(lk("hopf"), vec![vec![0, 1], vec![1, 0]]);
    assert_eq!(lk("unlink2x")[0][1], 0);
    assert_eq!(lk("t24")[0][1].abs(), 2);
    assert_eq!(lk("linked_triangles")[0][1].abs(), 1);
    assert_eq!(lk("trefoil"), vec![vec![0]]);
}

#[test]
fn properness_of_the_fixtures() {
    let p = |n: &str| is_proper(&LinkingMatrix { lk: lk(n) });
    let hopf = p("hopf");
    assert!(!hopf.proper);
    assert_eq!(hopf.odd_components, vec![0, 1]);
    assert_eq!(hopf.row_sums, vec![1, 1]);
    assert!(p("t24").proper);
    assert!(p("unlink2x").proper);
    assert!(!p("linked_triangles").proper);
    assert!(p("trefoil").proper);
}

#[test]
fn warping_of_the_fixtures() {
    let w = |n: &str| warping_matrix(&corpus::load(n).unwrap()).w;
    assert_eq!(w("hopf")[0][1], 1);
    assert_eq!(w("unlink2x")[0][1], 2);
    assert!(warping_matrix(&corpus::load("theta0").unwrap()).is_zero());
}

// Half the signed count over all inter-component crossings must agree with
// the signed count of only those where the second component is over.
#[test]
fn over_crossings_alone_give_the_linking_number() {
    for (name, d) in corpus::all() {
        let Ok(o) = eulerian_orientation(&d) else { continue };
        let m = linking_matrix(&d, &o).unwrap();
        let n = d.graph().component_count;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let s: i64 = d
                    .crossings()
                    .into_iter()
                    .filter(|&x| {
                        let (a, b) = d.crossing_components(x);
                        (a, b) == (i, j) || (a, b) == (j, i)
                    })
                    .filter(|&x| over_component(&d, x) == j)
                    .map(|x| crossing_sign(&d, &o, x) as i64)
                    .sum();
                assert_eq!(s, m.lk[i][j], "{name} {i} {j}");
            }
        }
    }
}

#[test]
fn parity_is_independent_of_the_orientation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, d) in corpus::all() {
        let Ok(base) = eulerian_orientation(&d) else { continue };
        let m0 = linking_matrix(&d, &base).unwrap();
        for _ in 0..10 {
            let o = random_eulerian_orientation(&d, &mut rng).unwrap();
            let m = linking_matrix(&d, &o).unwrap();
            for (r0, r) in m0.lk.iter().zip(&m.lk) {
                for (a, b) in r0.iter().zip(r) {
                    assert_eq!(a.rem_euclid(2), b.rem_euclid(2), "{name}");
                }
            }
        }
    }
}

#[test]
fn reversing_one_component_negates_its_row() {
    let d = corpus::load("t24").unwrap();
    let o = eulerian_orientation(&d).unwrap();
    let m = linking_matrix(&d, &o).unwrap();
    let r = linking_matrix(&d, &o.reversed_component(&d, 1)).unwrap();
    assert_eq!(r.lk[0][1], -m.lk[0][1]);
    assert_eq!(r.lk[1][0], -m.lk[1][0]);
}
