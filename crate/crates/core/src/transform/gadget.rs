//! Changing a crossing away from the odd vertices: a finger of a path edge is
//! pushed over everything to the crossing and wrapped around it, then its two
//! end crossings are each sent back to an odd vertex by a spur.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::builder::Builder;
use super::marks::MarkTracker;
use super::spur::{
    check_present, dart_of_label, face_ids, over_at, restore, shortest_from, spur_insert_with, spur_retract, trace_from, SpurPath,
    SpurRecord, Step,
};
use crate::diagram::{Corner, Dart, Diagram};
use crate::error::{Error, Result};

/// A path between two vertices: the half-edge to leave the first by, then
/// the slot to leave each intermediate vertex by.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasePath {
    pub start: String,
    pub exits: Vec<usize>,
}

/// Everything needed to rebuild a finger and its two spurs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FingerSpec {
    pub crossing: String,
    /// Path edge the finger is pulled out of.
    pub base_arc: String,
    /// End of the base arc on the first vertex's side.
    pub from: String,
    /// Whether the finger leaves into the face right of the base arc, seen from `from`.
    pub right: bool,
    /// Arcs crossed, each as (arc id, half-edge at the end whose right side the finger enters).
    pub route: Vec<(String, String)>,
    /// Corner of the target crossing the finger arrives in.
    pub corner: usize,
    pub tip_over: bool,
    pub to_v1: Vec<usize>,
    pub to_v2: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GadgetRecord {
    pub spec: FingerSpec,
    pub tip: Vec<String>,
    pub route_pairs: Vec<(String, String)>,
    /// Face inside the tip opposite the finger, on the diagram before the spurs.
    pub inner_face: String,
    pub spur1: SpurRecord,
    pub spur2: SpurRecord,
    /// Composite region set on the final diagram.
    pub regions: Vec<String>,
    /// True when mark transport was unambiguous.
    pub marks_clean: bool,
    #[serde(skip)]
    pub(crate) before: Diagram,
    /// Labels on every line inserted by the finger and both spurs.
    #[serde(skip)]
    pub(crate) lines: BTreeSet<String>,
}

impl GadgetRecord {
    /// Half-edge labels on the lines this insertion added.
    pub fn lines(&self) -> &BTreeSet<String> {
        &self.lines
    }
}

/// Builds the finger, both spurs and the composite regions from `spec`.
pub fn far_gadget_with(d: &Diagram, spec: &FingerSpec, prefix: &str) -> Result<(Diagram, GadgetRecord)> {
    let ci = d.crossing_index(&spec.crossing)?;
    let ai = d.arc_index(&spec.base_arc).ok_or_else(|| Error::Replay(format!("arc `{}` is missing", spec.base_arc)))?;
    let alpha = d.arc(ai).clone();
    let h_b = if alpha.ends[0] == spec.from {
        alpha.ends[1].clone()
    } else if alpha.ends[1] == spec.from {
        alpha.ends[0].clone()
    } else {
        return Err(Error::Replay(format!("`{}` is not an end of `{}`", spec.from, spec.base_arc)));
    };
    let h_a = spec.from.clone();
    let cn = d.node(ci).clone();
    let mut b = Builder::new(d, prefix);

    // route crossings: slots [N, W, S, E] with the crossed arc running S to N
    let mut outs = Vec::new();
    let mut backs = Vec::new();
    for (arc, tail) in &spec.route {
        let i = d.arc_index(arc).ok_or_else(|| Error::Replay(format!("arc `{arc}` is missing")))?;
        if !d.arc(i).ends.contains(tail) {
            return Err(Error::Replay(format!("`{tail}` is not an end of `{arc}`")));
        }
        let (o, so) = b.crossing(false);
        let (k, sk) = b.crossing(false);
        b.mark_line([&so[1], &so[3], &sk[1], &sk[3]]);
        let (first, second) = if spec.right { (&so, &sk) } else { (&sk, &so) };
        b.cut(tail, &second[2], &second[0]);
        b.cut(tail, &first[2], &first[0]);
        outs.push((o, so[1].clone(), so[3].clone()));
        backs.push((k, sk[3].clone(), sk[1].clone()));
    }
    let a = spec.corner;
    let arms: Vec<usize> = if spec.right { vec![a + 1, a + 2, a + 3, a] } else { vec![a, a + 3, a + 2, a + 1] };
    let mut tip = Vec::new();
    for arm in arms {
        let (k, s) = b.crossing(spec.tip_over);
        let label = &cn.slots[arm % 4];
        if spec.right {
            b.cut(label, &s[1], &s[3]);
        } else {
            b.cut(label, &s[3], &s[1]);
        }
        b.mark_line([&s[0], &s[2]]);
        tip.push((k, s[2].clone(), s[0].clone()));
    }
    let mut chain: Vec<(String, String, String)> = outs.clone();
    chain.extend(tip.iter().cloned());
    chain.extend(backs.iter().rev().cloned());
    b.connect(&h_a, &chain[0].1);
    b.rename_arc(&h_a, &spec.base_arc);
    for w in chain.windows(2) {
        b.connect(&w[0].2, &w[1].1);
    }
    b.connect(&chain.last().unwrap().2, &h_b);
    let mut lines = b.lines();
    let e1 = b.finish()?;
    let c1 = e1.crossing_index(&cn.id)?;
    let inner = e1.corner_face(Corner { node: c1, gap: (a + 2) % 4 });

    let k1 = &tip[0];
    let p1 = SpurPath { start: k1.1.clone(), exits: spec.to_v1.clone() };
    let (e2, r1) = spur_insert_with(&e1, &k1.0, &p1, None, &format!("{prefix}1."))?;
    let k4 = &tip[3];
    let p2 = SpurPath { start: k4.2.clone(), exits: spec.to_v2.clone() };
    let (e3, r2) = spur_insert_with(&e2, &k4.0, &p2, None, &format!("{prefix}2."))?;

    let mut marks = MarkTracker::new([inner]);
    marks.transport(&e1, &e2, &r1.lines);
    marks.toggle(r1.regions.iter().map(|f| e2.face_index(f).unwrap()));
    marks.transport(&e2, &e3, &r2.lines);
    marks.toggle(r2.regions.iter().map(|f| e3.face_index(f).unwrap()));
    lines.extend(r1.lines.iter().cloned());
    lines.extend(r2.lines.iter().cloned());

    let rec = GadgetRecord {
        spec: spec.clone(),
        tip: tip.iter().map(|t| t.0.clone()).collect(),
        route_pairs: outs.iter().zip(&backs).map(|(o, k)| (o.0.clone(), k.0.clone())).collect(),
        inner_face: e1.face(inner).id.clone(),
        spur1: r1,
        spur2: r2,
        regions: face_ids(&e3, &marks.faces()),
        marks_clean: !marks.ambiguous,
        before: d.clone(),
        lines,
    };
    Ok((e3, rec))
}

/// Retracts both spurs and then the finger.
pub fn gadget_retract(e: &Diagram, rec: &GadgetRecord) -> Result<Diagram> {
    let e2 = spur_retract(e, &rec.spur2)?;
    let e1 = spur_retract(&e2, &rec.spur1)?;
    check_present(&e1, &rec.tip)?;
    let pairs: Vec<String> = rec.route_pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
    check_present(&e1, &pairs)?;
    let t0 = over_at(&e1, &rec.tip[0], 0);
    if rec.tip.iter().any(|k| over_at(&e1, k, 0) != t0) {
        return Err(Error::NotRetractable("finger tip is over some arms and under others".into()));
    }
    for (o, k) in &rec.route_pairs {
        if over_at(&e1, o, 1) != over_at(&e1, k, 1) {
            return Err(Error::NotRetractable(format!("finger sides disagree at `{o}` and `{k}`")));
        }
    }
    Ok(restore(&rec.before, &e1, ""))
}

/// Darts leaving each node along the path, and the traced steps.
fn path_darts(d: &Diagram, v1: usize, base: &BasePath) -> Result<(Vec<Dart>, Vec<Step>, usize)> {
    let start = dart_of_label(d, v1, &base.start)
        .ok_or_else(|| Error::PathNotIncident(format!("`{}` is not a slot of `{}`", base.start, d.node(v1).id)))?;
    let t = trace_from(d, start, &base.exits, Some(v1))?;
    let mut darts = vec![start];
    for s in &t.steps {
        darts.push(match *s {
            Step::Pass { x, a } => Dart::new(x, (a + 2) % 4),
            Step::Vertex { u, b, .. } => Dart::new(u, b),
        });
    }
    Ok((darts, t.steps, t.terminal))
}

/// Shortest sequence of arcs to cross from `from` to a face at crossing `c`,
/// never crossing arc `skip`. Returns (darts with the next face on their right, final face).
fn dual_route(d: &Diagram, from: usize, c: usize, skip: usize) -> Option<(Vec<Dart>, usize)> {
    let goal: BTreeSet<usize> = (0..4).map(|g| d.corner_face(Corner { node: c, gap: g })).collect();
    let nf = d.faces().len();
    let mut adj: Vec<Vec<(usize, Dart)>> = vec![Vec::new(); nf];
    for ai in 0..d.arcs().len() {
        if ai == skip {
            continue;
        }
        let h = &d.arc(ai).ends[0];
        let n = d.nodes().iter().position(|n| n.slots.contains(h)).unwrap();
        let d0 = dart_of_label(d, n, h).unwrap();
        let (r, l) = (d.face_right_of(d0), d.face_left_of(d0));
        if r != l {
            adj[l].push((r, d0));
            adj[r].push((l, d.partner(d0)));
        }
    }
    let mut prev: Vec<Option<(usize, Dart)>> = vec![None; nf];
    let mut seen = vec![false; nf];
    let mut q = VecDeque::from([from]);
    seen[from] = true;
    while let Some(f) = q.pop_front() {
        if goal.contains(&f) {
            let mut route = Vec::new();
            let mut cur = f;
            while let Some((p, dart)) = prev[cur] {
                route.push(dart);
                cur = p;
            }
            route.reverse();
            return Some((route, f));
        }
        for &(g, dart) in &adj[f] {
            if !seen[g] {
                seen[g] = true;
                prev[g] = Some((f, dart));
                q.push_back(g);
            }
        }
    }
    None
}

/// Picks the base arc and route for a finger from path `base` (from `v1`
/// to `v2`) to crossing `c`: the shortest route over all path arcs and both
/// sides, earlier arcs and the right side first on ties.
pub fn finger_spec(d: &Diagram, c: &str, v1: &str, v2: &str, base: &BasePath) -> Result<FingerSpec> {
    let ci = d.crossing_index(c)?;
    let v1i = d.vertex_index(v1)?;
    let v2i = d.vertex_index(v2)?;
    let g = d.graph();
    let comp = g.vertex_component[v1i].unwrap();
    let (p, q) = d.crossing_components(ci);
    if p == comp || q == comp {
        return Err(Error::CrossingOnSameComponent(c.to_string()));
    }
    if d.degree(v1i).is_multiple_of(2) {
        return Err(Error::EvenTerminalVertex(v1.to_string()));
    }
    let (darts, steps, terminal) = path_darts(d, v1i, base)?;
    if terminal != v2i {
        return Err(Error::PathNotIncident(format!("base path ends at `{}`, not `{v2}`", d.node(terminal).id)));
    }
    let mut best: Option<(usize, usize, usize, Vec<Dart>, usize)> = None;
    for (k, &dk) in darts.iter().enumerate() {
        let ai = d.arc_at(dk);
        for (side, f0) in [(0, d.face_right_of(dk)), (1, d.face_left_of(dk))] {
            if let Some((route, fm)) = dual_route(d, f0, ci, ai) {
                let key = (route.len(), k, side);
                if best.as_ref().is_none_or(|b| key < (b.0, b.1, b.2)) {
                    best = Some((route.len(), k, side, route, fm));
                }
            }
        }
    }
    let Some((_, k, side, route, fm)) = best else { return Err(Error::NoRoute(c.to_string())) };
    let corner = (0..4).find(|&g| d.corner_face(Corner { node: ci, gap: g }) == fm).unwrap();
    let to_v1: Vec<usize> = steps[..k]
        .iter()
        .rev()
        .filter_map(|s| match *s {
            Step::Vertex { a, .. } => Some(a),
            Step::Pass { .. } => None,
        })
        .collect();
    let to_v2: Vec<usize> = steps[k..]
        .iter()
        .filter_map(|s| match *s {
            Step::Vertex { b, .. } => Some(b),
            Step::Pass { .. } => None,
        })
        .collect();
    Ok(FingerSpec {
        crossing: c.to_string(),
        base_arc: d.arc(d.arc_at(darts[k])).id.clone(),
        from: d.half_edge(darts[k]).to_string(),
        right: side == 0,
        route: route.iter().map(|&r| (d.arc(d.arc_at(r)).id.clone(), d.half_edge(r).to_string())).collect(),
        corner,
        tip_over: true,
        to_v1,
        to_v2,
    })
}

/// Realizes a change of crossing `c` (off the component of `v1`, `v2`) via
/// a finger from path `base` and spurs to both odd ends.
pub fn far_gadget(d: &Diagram, c: &str, v1: &str, v2: &str, base: &BasePath) -> Result<(Diagram, GadgetRecord)> {
    let spec = finger_spec(d, c, v1, v2, base)?;
    far_gadget_with(d, &spec, "g.")
}

/// A shortest path from `v1` to `v2` through even vertices only.
pub fn shortest_vertex_path(d: &Diagram, v1: &str, v2: &str) -> Result<BasePath> {
    vertex_path_with_length(d, v1, v2).map(|(p, _)| p)
}

/// As [`shortest_vertex_path`], with the path's length in arcs.
pub fn vertex_path_with_length(d: &Diagram, v1: &str, v2: &str) -> Result<(BasePath, usize)> {
    let a = d.vertex_index(v1)?;
    let b = d.vertex_index(v2)?;
    let legs: Vec<(Dart, usize)> = (0..d.degree(a)).map(|s| (Dart::new(a, s), s)).collect();
    let best = shortest_from(d, &legs, a);
    match best.get(&b) {
        Some((n, li, exits)) => Ok((BasePath { start: d.node(a).slots[legs[*li].1].clone(), exits: exits.clone() }, *n)),
        None => Err(Error::PathNotIncident(format!("no path from `{v1}` to `{v2}` through even vertices"))),
    }
}
