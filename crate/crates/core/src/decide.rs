//! Verdicts on unknottability and complete splittability, and replayable
//! witnesses realizing them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::{component_name, Dart, Diagram};
use crate::error::{Error, Result};
use crate::gf2::{incidence_matrix, solve, solve_with_dont_care, SolveOutcome};
use crate::invariants::{eulerian_check, eulerian_orientation, is_proper, linking_matrix, over_component};
use crate::transform::{
    far_gadget_with, finger_spec, gadget_retract, knotify, region_effect, shortest_spur_path, spur_insert_with, spur_retract, toggle,
    vertex_path_with_length, FingerSpec, GadgetRecord, MarkTracker, SpurPath, SpurRecord,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Question {
    Unknottable,
    Splittable,
}

impl fmt::Display for Question {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Question::Unknottable => "unknottable",
            Question::Splittable => "splittable",
        })
    }
}

impl FromStr for Question {
    type Err = Error;
    fn from_str(s: &str) -> Result<Question> {
        match s {
            "unknottable" => Ok(Question::Unknottable),
            "splittable" => Ok(Question::Splittable),
            _ => Err(Error::Unsupported(format!("unknown question `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    NonEulerian,
    EulerianProper,
    EulerianImproper,
}

/// Components whose linking numbers with the rest sum to an odd number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityCertificate {
    pub odd_components: Vec<String>,
    pub row_sums: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub question: Question,
    pub answer: bool,
    pub reason: Reason,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<ParityCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn classify(d: &Diagram) -> (Reason, Option<ParityCertificate>) {
    if !eulerian_check(d).eulerian {
        return (Reason::NonEulerian, None);
    }
    let o = eulerian_orientation(d).expect("Eulerian diagrams have Eulerian orientations");
    let p = is_proper(&linking_matrix(d, &o).expect("orientation is Eulerian"));
    if p.proper {
        (Reason::EulerianProper, None)
    } else {
        let cert = ParityCertificate { odd_components: p.odd_components.iter().map(|&c| component_name(c)).collect(), row_sums: p.row_sums };
        (Reason::EulerianImproper, Some(cert))
    }
}

pub fn decide_splittable(d: &Diagram) -> Verdict {
    let (reason, certificate) = classify(d);
    Verdict { question: Question::Splittable, answer: reason != Reason::EulerianImproper, reason, certificate, note: None }
}

/// Requires a planar abstract graph.
pub fn decide_unknottable(d: &Diagram) -> Result<Verdict> {
    if !d.is_planar_abstract() {
        return Err(Error::NonPlanarGraph);
    }
    let (reason, certificate) = classify(d);
    Ok(Verdict {
        question: Question::Unknottable,
        answer: reason != Reason::EulerianImproper,
        reason,
        certificate,
        note: Some("abstract graph is planar".into()),
    })
}

pub fn decide(d: &Diagram, q: Question) -> Result<Verdict> {
    match q {
        Question::Splittable => Ok(decide_splittable(d)),
        Question::Unknottable => decide_unknottable(d),
    }
}

/// Crossings to change, and the crossings whose outcome is constrained.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Target {
    pub change: Vec<usize>,
    pub care: Vec<usize>,
}

/// Non-self crossings where the component later in `order` passes over.
/// Flipping them leaves every earlier component under every later one.
pub fn split_target(d: &Diagram, order: &[usize]) -> Target {
    let n = d.graph().component_count;
    let mut rank = vec![usize::MAX; n];
    for (i, &c) in order.iter().enumerate() {
        if c < n {
            rank[c] = i;
        }
    }
    let mut t = Target::default();
    for x in d.crossings() {
        let (a, b) = d.crossing_components(x);
        if a == b {
            continue;
        }
        t.care.push(x);
        let later = if rank[a] > rank[b] { a } else { b };
        if over_component(d, x) == later {
            t.change.push(x);
        }
    }
    t
}

/// Walks from departing dart `start` straight through crossings (and
/// degree-2 vertices when `through_markers`), recording (crossing, arrival
/// slot). Stops at any other vertex or back at `start`; returns the last
/// arrival too.
fn walk(d: &Diagram, start: Dart, through_markers: bool) -> (Vec<(usize, usize)>, Dart) {
    let mut seen = Vec::new();
    let mut cur = start;
    loop {
        let a = d.partner(cur);
        let n = d.node(a.node);
        if n.is_crossing() {
            seen.push((a.node, a.slot));
            cur = Dart::new(a.node, (a.slot + 2) % 4);
        } else if through_markers && n.degree() == 2 {
            cur = Dart::new(a.node, 1 - a.slot);
        } else {
            return (seen, a);
        }
        if cur == start {
            return (seen, a);
        }
    }
}

/// Crossings among `xs` whose over strand is met later than the under one.
fn misordered(d: &Diagram, keys: &BTreeMap<(usize, usize), (usize, usize)>, xs: impl IntoIterator<Item = usize>) -> Vec<usize> {
    xs.into_iter()
        .filter(|&x| {
            let (Some(k0), Some(k1)) = (keys.get(&(x, 0)), keys.get(&(x, 1))) else { return false };
            let earlier_is_02 = k0 < k1;
            d.over02(x) != earlier_is_02
        })
        .collect()
}

fn record(keys: &mut BTreeMap<(usize, usize), (usize, usize)>, rank: usize, passages: &[(usize, usize)]) {
    for (i, &(x, s)) in passages.iter().enumerate() {
        keys.entry((x, s % 2)).or_insert((rank, i));
    }
}

fn label_dart(d: &Diagram, label: &str) -> Dart {
    d.nodes()
        .iter()
        .enumerate()
        .find_map(|(i, n)| n.slots.iter().position(|s| s == label).map(|s| Dart::new(i, s)))
        .expect("arc ends are node slots")
}

fn arc_component(d: &Diagram, ai: usize) -> usize {
    d.component_of_strand(d.strand_at(label_dart(d, &d.arc(ai).ends[0])))
}

fn component_arcs(d: &Diagram, comp: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..d.arcs().len()).filter(|&a| arc_component(d, a) == comp).collect();
    v.sort_by(|&a, &b| d.arc(a).id.cmp(&d.arc(b).id));
    v
}

fn self_crossings(d: &Diagram, comp: usize) -> Vec<usize> {
    d.crossings().into_iter().filter(|&x| d.crossing_components(x) == (comp, comp)).collect()
}

fn check_component(d: &Diagram, comp: usize) -> Result<()> {
    if comp >= d.graph().component_count {
        return Err(Error::UnknownComponent(component_name(comp)));
    }
    Ok(())
}

/// Self-crossings of a closed-strand component first met from below when
/// traversing from the start of arc `basepoint` (towards its second end when
/// `forward`). Flipping them makes the component descending.
pub fn descending_target(d: &Diagram, comp: usize, basepoint: &str, forward: bool) -> Result<Vec<usize>> {
    check_component(d, comp)?;
    let g = d.graph();
    if g.component_vertices(comp).iter().any(|&v| g.degree[v] != 2) {
        return Err(Error::NotAKnotComponent(comp));
    }
    let ai = d.arc_index(basepoint).ok_or_else(|| Error::UnknownArc(basepoint.to_string()))?;
    if arc_component(d, ai) != comp {
        return Err(Error::UnknownArc(format!("{basepoint} (not on {})", component_name(comp))));
    }
    let ends = &d.arc(ai).ends;
    let start = label_dart(d, if forward { &ends[0] } else { &ends[1] });
    let (passages, _) = walk(d, start, true);
    let mut keys = BTreeMap::new();
    record(&mut keys, 0, &passages);
    Ok(misordered(d, &keys, self_crossings(d, comp)))
}

/// Self-crossings of component `comp` to change so that it is unknotted on
/// its own: descending for closed strands, descending on the knotification
/// for Eulerian components, and a depth-first descending order otherwise.
pub fn unknot_target(d: &Diagram, comp: usize) -> Result<Vec<usize>> {
    check_component(d, comp)?;
    if !d.is_planar_abstract() {
        return Err(Error::NonPlanarGraph);
    }
    let g = d.graph();
    let verts = g.component_vertices(comp);
    let arcs = component_arcs(d, comp);
    if verts.iter().all(|&v| g.degree[v] == 2) {
        return descending_target(d, comp, &d.arc(arcs[0]).id, true);
    }
    if verts.iter().all(|&v| g.degree[v].is_multiple_of(2)) {
        let anchor = d.arc(arcs[0]).id.clone();
        let (e, _) = knotify(d, comp)?;
        let ec = arc_component(&e, e.arc_index(&anchor).expect("splitting keeps arcs"));
        let t = descending_target(&e, ec, &anchor, true)?;
        return t.into_iter().map(|x| d.crossing_index(&e.node(x).id)).collect();
    }
    // depth-first over the component's edges: earlier edges pass over later
    // ones, each edge descending along its own direction
    let mut keys = BTreeMap::new();
    let mut strand_seen = BTreeSet::new();
    let mut vert_seen = BTreeSet::new();
    let mut rank = 0;
    let mut stack = vec![verts[0]];
    fn visit(
        d: &Diagram,
        u: usize,
        keys: &mut BTreeMap<(usize, usize), (usize, usize)>,
        strands: &mut BTreeSet<usize>,
        verts: &mut BTreeSet<usize>,
        rank: &mut usize,
    ) {
        if !verts.insert(u) {
            return;
        }
        for s in 0..d.degree(u) {
            let dart = Dart::new(u, s);
            if !strands.insert(d.strand_at(dart)) {
                continue;
            }
            let (passages, end) = walk(d, dart, false);
            record(keys, *rank, &passages);
            *rank += 1;
            visit(d, end.node, keys, strands, verts, rank);
        }
    }
    while let Some(u) = stack.pop() {
        visit(d, u, &mut keys, &mut strand_seen, &mut vert_seen, &mut rank);
    }
    Ok(misordered(d, &keys, self_crossings(d, comp)))
}

/// One insertion of a witness script.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ScriptStep {
    Spur { crossing: String, path: SpurPath, terminal: String, prefix: String },
    Gadget { spec: FingerSpec, prefix: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegionsSource {
    /// Solved directly on the input diagram.
    Direct,
    /// Composed from the per-insertion region sets.
    Marks,
    /// Solved on the final diagram for the effect the retraction needs.
    Solver,
}

/// Insertions turning the input into a diagram `E`, regions of `E` to
/// apply, and the crossing changes the retraction must then show.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPlan {
    pub question: Question,
    pub script: Vec<ScriptStep>,
    pub regions: Vec<String>,
    pub target: Vec<String>,
    pub care: Vec<String>,
    pub regions_source: RegionsSource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Witness {
    Plan(WitnessPlan),
    Impossible(ParityCertificate),
}

impl Witness {
    pub fn plan(&self) -> Option<&WitnessPlan> {
        match self {
            Witness::Plan(p) => Some(p),
            Witness::Impossible(_) => None,
        }
    }
}

/// A record of one replayed insertion, for retraction.
#[derive(Clone, Debug)]
pub enum Inserted {
    Spur(SpurRecord),
    Gadget(GadgetRecord),
}

fn replay_error(k: usize, e: Error) -> Error {
    match e {
        Error::Replay(m) => Error::Replay(format!("step {}: {m}", k + 1)),
        e => Error::Replay(format!("step {}: {e}", k + 1)),
    }
}

fn insert(d: &Diagram, step: &ScriptStep) -> Result<(Diagram, Inserted)> {
    match step {
        ScriptStep::Spur { crossing, path, terminal, prefix } => {
            let (e, r) = spur_insert_with(d, crossing, path, Some(terminal), prefix)?;
            Ok((e, Inserted::Spur(r)))
        }
        ScriptStep::Gadget { spec, prefix } => {
            let (e, r) = far_gadget_with(d, spec, prefix)?;
            Ok((e, Inserted::Gadget(r)))
        }
    }
}

/// Runs the script's insertions in order.
pub fn replay(d: &Diagram, script: &[ScriptStep]) -> Result<(Diagram, Vec<Inserted>)> {
    let mut cur = d.clone();
    let mut recs = Vec::new();
    for (k, s) in script.iter().enumerate() {
        let (e, r) = insert(&cur, s).map_err(|e| replay_error(k, e))?;
        recs.push(r);
        cur = e;
    }
    Ok((cur, recs))
}

/// Retracts the insertions, last first.
pub fn retract_all(e: &Diagram, recs: &[Inserted]) -> Result<Diagram> {
    let mut cur = e.clone();
    for r in recs.iter().rev() {
        cur = match r {
            Inserted::Spur(r) => spur_retract(&cur, r)?,
            Inserted::Gadget(r) => gadget_retract(&cur, r)?,
        };
    }
    Ok(cur)
}

fn ids(d: &Diagram, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| d.node(x).id.clone()).collect()
}

fn face_names(d: &Diagram, fs: &[usize]) -> Vec<String> {
    fs.iter().map(|&f| d.face(f).id.clone()).collect()
}

fn violation(what: &str) -> Error {
    Error::TheoremViolation(format!("{what} has no region solution on a proper Eulerian diagram"))
}

fn xor(a: &mut BTreeSet<usize>, b: impl IntoIterator<Item = usize>) {
    for x in b {
        if !a.remove(&x) {
            a.insert(x);
        }
    }
}

/// Complete-splitting witness: a direct region set on proper Eulerian
/// diagrams, an insertion script plus regions on non-Eulerian ones.
pub fn witness_splittable(d: &Diagram) -> Result<Witness> {
    let (reason, cert) = classify(d);
    let t = split_target(d, &d.component_order());
    match reason {
        Reason::EulerianImproper => Ok(Witness::Impossible(cert.unwrap())),
        Reason::EulerianProper => {
            let m = incidence_matrix(d);
            match solve_with_dont_care(&m, &t.change, &t.care)? {
                SolveOutcome::Sat { regions, .. } => Ok(Witness::Plan(WitnessPlan {
                    question: Question::Splittable,
                    script: Vec::new(),
                    regions: face_names(d, &regions),
                    target: ids(d, &t.change),
                    care: ids(d, &t.care),
                    regions_source: RegionsSource::Direct,
                })),
                SolveOutcome::Unsat { .. } => Err(violation("the splitting target")),
            }
        }
        Reason::NonEulerian => Ok(Witness::Plan(nonsplit_pipeline(d, Question::Splittable, &t)?)),
    }
}

/// Unknotting witness. Proper Eulerian diagrams get the splitting regions
/// combined with per-component unknotting regions, reducible self-crossings
/// left free when needed.
pub fn witness_unknottable(d: &Diagram) -> Result<Witness> {
    if !d.is_planar_abstract() {
        return Err(Error::NonPlanarGraph);
    }
    let (reason, cert) = classify(d);
    let n = d.graph().component_count;
    let split = split_target(d, &d.component_order());
    match reason {
        Reason::EulerianImproper => Ok(Witness::Impossible(cert.unwrap())),
        Reason::EulerianProper => {
            let m = incidence_matrix(d);
            let SolveOutcome::Sat { regions: r0, .. } = solve_with_dont_care(&m, &split.change, &split.care)? else {
                return Err(violation("the splitting target"));
            };
            let base_effect: BTreeSet<usize> = m.effect(&r0).into_iter().collect();
            let mut total: BTreeSet<usize> = r0.iter().copied().collect();
            let mut change: BTreeSet<usize> = split.change.iter().copied().collect();
            let mut care: BTreeSet<usize> = split.care.iter().copied().collect();
            let all = d.crossings();
            for c in 0..n {
                let own = self_crossings(d, c);
                let want = unknot_target(d, c)?;
                change.extend(want.iter().copied());
                // fix what the splitting regions did to this component
                let mut fix: BTreeSet<usize> = want.iter().copied().collect();
                xor(&mut fix, own.iter().copied().filter(|x| base_effect.contains(x)));
                let fix: Vec<usize> = fix.into_iter().collect();
                let loose: Vec<usize> = own.iter().copied().filter(|&x| d.is_reducible(x)).collect();
                let strict = solve_with_dont_care(&m, &fix, &all)?;
                let (ri, kept) = match strict {
                    SolveOutcome::Sat { regions, .. } => (regions, own.clone()),
                    SolveOutcome::Unsat { .. } => {
                        let care_i: Vec<usize> = all.iter().copied().filter(|x| !loose.contains(x)).collect();
                        match solve_with_dont_care(&m, &fix, &care_i)? {
                            SolveOutcome::Sat { regions, .. } => {
                                (regions, own.iter().copied().filter(|x| !loose.contains(x)).collect())
                            }
                            SolveOutcome::Unsat { .. } => return Err(violation(&format!("unknotting {}", component_name(c)))),
                        }
                    }
                };
                care.extend(kept);
                xor(&mut total, ri);
            }
            let change: Vec<usize> = change.into_iter().filter(|x| care.contains(x)).collect();
            let care: Vec<usize> = care.into_iter().collect();
            let regions: Vec<usize> = total.into_iter().collect();
            Ok(Witness::Plan(WitnessPlan {
                question: Question::Unknottable,
                script: Vec::new(),
                regions: face_names(d, &regions),
                target: ids(d, &change),
                care: ids(d, &care),
                regions_source: RegionsSource::Direct,
            }))
        }
        Reason::NonEulerian => {
            let mut change: BTreeSet<usize> = split.change.iter().copied().collect();
            for c in 0..n {
                change.extend(unknot_target(d, c)?);
            }
            let t = Target { change: change.into_iter().collect(), care: d.crossings() };
            Ok(Witness::Plan(nonsplit_pipeline(d, Question::Unknottable, &t)?))
        }
    }
}

pub fn witness(d: &Diagram, q: Question) -> Result<Witness> {
    match q {
        Question::Splittable => witness_splittable(d),
        Question::Unknottable => witness_unknottable(d),
    }
}

/// Odd vertices of component `comp`, by id.
fn odd_vertices(d: &Diagram, comp: usize) -> Vec<String> {
    let g = d.graph();
    g.component_vertices(comp).into_iter().filter(|&v| g.degree[v] % 2 == 1).map(|v| d.node(v).id.clone()).collect()
}

/// Realizes the crossing changes of `t` on a diagram with a non-Eulerian
/// component G: spurs to the nearest odd vertex for crossings on G, fingers
/// from a shortest path between two odd vertices of G for the rest.
fn nonsplit_pipeline(d: &Diagram, question: Question, t: &Target) -> Result<WitnessPlan> {
    let ec = eulerian_check(d);
    let g = ec.per_component.iter().position(|&e| !e).expect("a non-Eulerian component");
    let (near, far): (Vec<usize>, Vec<usize>) = t.change.iter().partition(|&&x| {
        let (a, b) = d.crossing_components(x);
        a == g || b == g
    });
    let mut cur = d.clone();
    let mut script = Vec::new();
    let mut marks = MarkTracker::default();
    let mut step = |cur: &mut Diagram, s: ScriptStep, marks: &mut MarkTracker| -> Result<()> {
        let (e, r) = insert(cur, &s)?;
        let (lines, regions) = match &r {
            Inserted::Spur(r) => (&r.lines, &r.regions),
            Inserted::Gadget(r) => (&r.lines, &r.regions),
        };
        marks.transport(cur, &e, lines);
        marks.toggle(regions.iter().map(|f| e.face_index(f).unwrap()));
        script.push(s);
        *cur = e;
        Ok(())
    };
    for (k, &x) in near.iter().enumerate() {
        let id = d.node(x).id.clone();
        let (path, terminal) = shortest_spur_path(&cur, &id, None)?;
        step(&mut cur, ScriptStep::Spur { crossing: id, path, terminal, prefix: format!("s{}.", k + 1) }, &mut marks)?;
    }
    if !far.is_empty() {
        let odd = odd_vertices(d, g);
        let mut best: Option<(usize, String, String)> = None;
        for (i, a) in odd.iter().enumerate() {
            for b in &odd[i + 1..] {
                if let Ok((_, n)) = vertex_path_with_length(&cur, a, b) {
                    if best.as_ref().is_none_or(|(m, _, _)| n < *m) {
                        best = Some((n, a.clone(), b.clone()));
                    }
                }
            }
        }
        let Some((_, v1, v2)) = best else {
            return Err(Error::PathNotIncident(format!("no two odd vertices of {} are joined through even vertices", component_name(g))));
        };
        for (k, &x) in far.iter().enumerate() {
            let id = d.node(x).id.clone();
            let base = vertex_path_with_length(&cur, &v1, &v2)?.0;
            let spec = finger_spec(&cur, &id, &v1, &v2, &base)?;
            step(&mut cur, ScriptStep::Gadget { spec, prefix: format!("g{}.", k + 1) }, &mut marks)?;
        }
    }
    let e = cur;
    // the same insertions on the changed diagram give the state that
    // retracts to it
    let reference_script: Vec<ScriptStep> = script
        .iter()
        .map(|s| match s {
            ScriptStep::Gadget { spec, prefix } => {
                ScriptStep::Gadget { spec: FingerSpec { tip_over: !spec.tip_over, ..spec.clone() }, prefix: prefix.clone() }
            }
            s => s.clone(),
        })
        .collect();
    let (reference, _) = replay(&toggle(d, &t.change), &reference_script)?;
    let need: Vec<usize> = e.crossing_diff(&reference).iter().map(|x| e.crossing_index(x)).collect::<Result<_>>()?;
    let mut need_set: Vec<usize> = need;
    need_set.sort();
    let from_marks = marks.faces();
    let (regions, source) = if !marks.ambiguous && region_effect(&e, &from_marks) == need_set {
        (from_marks, RegionsSource::Marks)
    } else {
        match solve(&incidence_matrix(&e), &need_set)? {
            SolveOutcome::Sat { regions, .. } => (regions, RegionsSource::Solver),
            SolveOutcome::Unsat { .. } => {
                return Err(Error::TheoremViolation("the inserted diagram admits no region set for the required changes".into()))
            }
        }
    };
    Ok(WitnessPlan {
        question,
        script,
        regions: face_names(&e, &regions),
        target: ids(d, &t.change),
        care: ids(d, &t.care),
        regions_source: source,
    })
}
