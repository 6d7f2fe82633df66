//! Batch checks of the decision procedures against brute force.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::enumerate::enumerate_targets;
use super::generate::{random_diagram, Profile};
use super::verify::verify_witness;
use crate::corpus;
use crate::decide::{decide_splittable, decide_unknottable, split_target, witness_splittable, Witness};
use crate::diagram::Diagram;
use crate::error::Error;
use crate::gf2::{incidence_matrix, solve, SolveOutcome};
use crate::invariants::{eulerian_check, eulerian_orientation, is_proper, linking_matrix, random_eulerian_orientation, warping_matrix};
use crate::transform::apply_regions;

/// A diagram to check, with the expected splittability verdict if known.
#[derive(Clone, Debug)]
pub struct Case {
    pub name: String,
    pub diagram: Diagram,
    pub expect_splittable: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationSummary {
    pub subsets: u64,
    pub rank: usize,
    pub achievable: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramReport {
    pub diagram: String,
    pub faces: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<EnumerationSummary>,
    pub claims: Vec<Claim>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub diagrams: Vec<DiagramReport>,
    pub passed: usize,
    pub failed: usize,
    pub theorem_violations: usize,
}

impl OracleReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> Vec<(String, String)> {
        self.diagrams
            .iter()
            .flat_map(|r| r.claims.iter().filter(|c| !c.pass).map(|c| (r.diagram.clone(), c.name.clone())))
            .collect()
    }
}

/// Splittability of the bundled diagrams.
pub fn corpus_cases() -> Vec<Case> {
    let expect = |n: &str| match n {
        "hopf" | "linked_triangles" => Some(false),
        "unknot0" | "unlink2x" | "trefoil" | "t24" | "theta0" | "handcuff0" | "reduc1" | "nonplanar_k5" => Some(true),
        _ => None,
    };
    corpus::all().into_iter().map(|(n, d)| Case { name: n.to_string(), diagram: d, expect_splittable: expect(n) }).collect()
}

pub fn generated_cases(seed: u64, profile: Profile, count: usize) -> Vec<Case> {
    (0..count as u64)
        .map(|i| Case { name: format!("{profile}#{}", seed + i), diagram: random_diagram(seed + i, profile), expect_splittable: None })
        .collect()
}

struct Claims(Vec<Claim>);

impl Claims {
    fn check(&mut self, name: &str, pass: bool, detail: impl FnOnce() -> String) {
        self.0.push(Claim { name: name.into(), pass, detail: (!pass).then(detail) });
    }
}

/// Targets to try: all of them for up to 10 crossings, otherwise 64 random.
fn targets(xs: &[usize], rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    if xs.len() <= 10 {
        (0u32..1 << xs.len()).map(|m| (0..xs.len()).filter(|&i| m >> i & 1 == 1).map(|i| xs[i]).collect()).collect()
    } else {
        (0..64).map(|_| xs.iter().copied().filter(|_| rng.gen()).collect()).collect()
    }
}

fn check_case(case: &Case, max_faces: usize, rng: &mut ChaCha8Rng, violations: &mut usize) -> DiagramReport {
    let d = &case.diagram;
    let mut c = Claims(Vec::new());
    let m = incidence_matrix(d);
    let xs = d.crossings();
    let ec = eulerian_check(d);
    let mut summary = None;
    let mut enumeration = None;
    if d.faces().len() <= max_faces.min(super::enumerate::MAX_FACES) {
        let en = enumerate_targets(d).expect("under the cap");
        c.check("enumeration-rank", en.rank == m.rank(), || format!("enumeration {} vs solver {}", en.rank, m.rank()));
        let mut bad = None;
        for t in targets(&xs, rng) {
            let reach = en.reaches(&t).is_some();
            let ok = match solve(&m, &t) {
                Ok(SolveOutcome::Sat { regions, .. }) => reach && m.effect(&regions) == t,
                Ok(SolveOutcome::Unsat { .. }) => !reach,
                Err(_) => false,
            };
            if !ok && bad.is_none() {
                bad = Some(t);
            }
        }
        c.check("solver-matches-enumeration", bad.is_none(), || format!("target {bad:?}"));
        let witnesses_ok = en.achievable.iter().all(|a| apply_regions(d, &a.witness).crossing_diff(d).len() == a.crossings.len());
        c.check("enumeration-witnesses", witnesses_ok, String::new);
        summary = Some(EnumerationSummary { subsets: en.subsets, rank: en.rank, achievable: en.achievable.len() });
        enumeration = Some(en);
    }
    if d.graph().component_count == 1 && d.graph().vertices.is_empty() {
        c.check("knot-full-rank", m.rank() == xs.len(), || format!("rank {} of {}", m.rank(), xs.len()));
    }
    let verdict = decide_splittable(d);
    if let Some(want) = case.expect_splittable {
        c.check("expected-verdict", verdict.answer == want, || format!("got {}, expected {want}", verdict.answer));
    }
    match witness_splittable(d) {
        Ok(w) => {
            c.check("verdict-matches-witness", verdict.answer == matches!(w, Witness::Plan(_)), || format!("{w:?}"));
            if let Witness::Plan(p) = &w {
                let v = verify_witness(d, p);
                c.check("witness-verifies", matches!(&v, Ok(v) if v.pass), || format!("{v:?}"));
            }
        }
        Err(e) => {
            if matches!(e, Error::TheoremViolation(_)) {
                *violations += 1;
            }
            c.check("verdict-matches-witness", false, || e.to_string());
        }
    }
    match decide_unknottable(d) {
        Ok(u) => c.check("unknottable-matches-splittable", u.answer == verdict.answer, String::new),
        Err(e) => c.check("unknottable-needs-planarity", e == Error::NonPlanarGraph && !d.is_planar_abstract(), || e.to_string()),
    }
    if ec.eulerian {
        let o = eulerian_orientation(d).unwrap();
        let lk = linking_matrix(d, &o).unwrap();
        let proper = is_proper(&lk).proper;
        if let Some(en) = &enumeration {
            let split = split_target(d, &d.component_order());
            let reach = en.achievable.iter().any(|a| split.care.iter().all(|x| a.crossings.contains(x) == split.change.contains(x)));
            c.check("splittable-iff-proper", reach == proper, || format!("reachable {reach}, proper {proper}"));
        }
        let mut faces: Vec<usize> = (0..d.faces().len()).collect();
        faces.shuffle(rng);
        let kept = faces.iter().take(20).all(|&f| {
            let e = apply_regions(d, &[f]);
            is_proper(&linking_matrix(&e, &o).unwrap()).proper == proper
        });
        c.check("properness-preserved", kept, String::new);
        let parity = |l: &crate::invariants::LinkingMatrix| l.lk.iter().map(|r| r.iter().sum::<i64>().rem_euclid(2)).collect::<Vec<_>>();
        let p0 = parity(&lk);
        let same = (0..10).all(|_| parity(&linking_matrix(d, &random_eulerian_orientation(d, rng).unwrap()).unwrap()) == p0);
        c.check("lk-parity-orientation-free", same, String::new);
        let w = warping_matrix(d);
        let n = lk.lk.len();
        let cong = (0..n).all(|i| (i + 1..n).all(|j| (w.w[i][j] as i64 - lk.lk[i][j]).rem_euclid(2) == 0));
        c.check("warping-matches-lk-parity", cong, String::new);
    }
    DiagramReport { diagram: case.name.clone(), faces: d.faces().len(), enumeration: summary, claims: c.0 }
}

/// Runs every check on every case; exhaustive checks only up to `max_faces`.
pub fn check_theorems(cases: &[Case], max_faces: usize, seed: u64) -> OracleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let diagrams: Vec<DiagramReport> = cases.iter().map(|k| check_case(k, max_faces, &mut rng, &mut violations)).collect();
    let (mut passed, mut failed) = (0, 0);
    for c in diagrams.iter().flat_map(|r| &r.claims) {
        if c.pass {
            passed += 1;
        } else {
            failed += 1;
        }
    }
    OracleReport { diagrams, passed, failed, theorem_violations: violations }
}
