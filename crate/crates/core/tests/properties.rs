use proptest::prelude::*;

use sgd_core::codec::{parse, serialize};
use sgd_core::gf2::{incidence_matrix, kernel_basis, solve, solve_with_dont_care, SolveOutcome};
use sgd_core::invariants::{eulerian_orientation, is_proper, linking_matrix, warping_matrix};
use sgd_core::oracle::{random_diagram, Profile};
use sgd_core::transform::{apply_regions, region_effect, toggle};
use sgd_core::Diagram;

fn profile() -> impl Strategy<Value = Profile> {
    prop_oneof![
        Just(Profile::Knot),
        (2usize..=3).prop_map(Profile::Link),
        Just(Profile::EulerianGraph),
        Just(Profile::NonEulerianGraph),
    ]
}

fn diagram() -> impl Strategy<Value = Diagram> {
    (any::<u64>(), profile()).prop_map(|(s, p)| random_diagram(s, p))
}

/// A diagram with a subset of its faces picked by `bits`.
fn with_faces() -> impl Strategy<Value = (Diagram, Vec<usize>)> {
    (diagram(), any::<u64>()).prop_map(|(d, bits)| {
        let fs = (0..d.faces().len()).filter(|&f| bits >> (f % 64) & 1 == 1).collect();
        (d, fs)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialize_then_parse_is_identity(d in diagram()) {
        let text = serialize(&d);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn region_changes_are_involutions((d, fs) in with_faces()) {
        let once = apply_regions(&d, &fs);
        prop_assert_eq!(apply_regions(&once, &fs), d.clone());
        prop_assert_eq!(once.crossing_diff(&d).len(), region_effect(&d, &fs).len());
    }

    #[test]
    fn region_changes_commute((d, fs) in with_faces(), cut in 0usize..64) {
        let cut = cut.min(fs.len());
        let (a, b) = fs.split_at(cut);
        prop_assert_eq!(apply_regions(&apply_regions(&d, a), b), apply_regions(&apply_regions(&d, b), a));
    }

    #[test]
    fn faces_stay_put_under_crossing_changes((d, fs) in with_faces()) {
        let e = toggle(&d, &d.crossings());
        prop_assert_eq!(e.faces(), d.faces());
        prop_assert_eq!(region_effect(&e, &fs), region_effect(&d, &fs));
    }

    #[test]
    fn solutions_realize_their_target((d, fs) in with_faces()) {
        let m = incidence_matrix(&d);
        let t = region_effect(&d, &fs);
        match solve(&m, &t).unwrap() {
            SolveOutcome::Sat { regions, .. } => prop_assert_eq!(m.effect(&regions), t),
            SolveOutcome::Unsat { .. } => prop_assert!(false, "an effect is always reachable"),
        }
    }

    #[test]
    fn kernel_vectors_change_nothing(d in diagram()) {
        let m = incidence_matrix(&d);
        let basis = kernel_basis(&m);
        prop_assert_eq!(basis.len() + m.rank(), d.faces().len());
        for k in basis {
            prop_assert!(m.effect(&k).is_empty());
        }
    }

    #[test]
    fn unsat_certificates_are_sound(d in diagram(), bits in any::<u64>()) {
        let m = incidence_matrix(&d);
        let xs = d.crossings();
        let t: Vec<usize> = xs.iter().copied().enumerate().filter(|(i, _)| bits >> (i % 64) & 1 == 1).map(|(_, x)| x).collect();
        if let SolveOutcome::Unsat { certificate } = solve(&m, &t).unwrap() {
            // every face meets the certificate evenly, the target oddly
            for f in d.faces() {
                prop_assert_eq!(f.crossings.iter().filter(|x| certificate.contains(x)).count() % 2, 0);
            }
            prop_assert_eq!(t.iter().filter(|x| certificate.contains(x)).count() % 2, 1);
        }
    }

    #[test]
    fn dont_care_solutions_match_on_care((d, fs) in with_faces(), bits in any::<u64>()) {
        let m = incidence_matrix(&d);
        let xs = d.crossings();
        let care: Vec<usize> = xs.iter().copied().enumerate().filter(|(i, _)| bits >> (i % 64) & 1 == 1).map(|(_, x)| x).collect();
        let t = region_effect(&d, &fs);
        let want: Vec<usize> = t.iter().copied().filter(|x| care.contains(x)).collect();
        match solve_with_dont_care(&m, &want, &care).unwrap() {
            SolveOutcome::Sat { regions, .. } => {
                let got: Vec<usize> = m.effect(&regions).into_iter().filter(|x| care.contains(x)).collect();
                prop_assert_eq!(got, want);
            }
            SolveOutcome::Unsat { .. } => prop_assert!(false),
        }
    }

    #[test]
    fn region_changes_keep_properness_and_warping_parity((d, fs) in with_faces()) {
        prop_assume!(eulerian_orientation(&d).is_ok());
        let o = eulerian_orientation(&d).unwrap();
        let before = linking_matrix(&d, &o).unwrap();
        let e = apply_regions(&d, &fs);
        let after = linking_matrix(&e, &o).unwrap();
        prop_assert_eq!(is_proper(&after).proper, is_proper(&before).proper);
        let n = after.lk.len();
        let w = warping_matrix(&e);
        for i in 0..n {
            for j in i + 1..n {
                prop_assert_eq!((w.w[i][j] as i64 - after.lk[i][j]).rem_euclid(2), 0);
            }
        }
    }
}
