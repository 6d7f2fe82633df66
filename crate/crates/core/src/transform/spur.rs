//! Stretching one strand of a crossing along a path to pass an odd vertex.
//!
//! The stretched strand (the spur) leaves the crossing on the left of the
//! path, runs alongside it, turns around the terminal vertex and returns on
//! the right. It crosses every edge hanging off the path's vertices (the
//! stubs) on the same side as it crossed the path, and copies the path's
//! over/under relation wherever the path itself is crossed. The crossing
//! itself is absorbed; retraction puts it back with the over/under read off
//! the stubs.

use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::cmp::Reverse;

use serde::{Deserialize, Serialize};

use super::builder::Builder;
use crate::diagram::{Dart, Diagram};
use crate::error::{Error, Result};

/// A path from a crossing to a vertex: the half-edge at the crossing to
/// leave by, then the slot to leave each intermediate vertex by.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpurPath {
    pub start: String,
    pub exits: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Step {
    Pass { x: usize, a: usize },
    Vertex { u: usize, a: usize, b: usize },
}

#[derive(Clone, Debug)]
pub(crate) struct Traced {
    pub p0: usize,
    pub steps: Vec<Step>,
    pub terminal: usize,
    pub arrival: usize,
}

/// Follows `exits` from dart `start`, passing straight through crossings.
/// `avoid` is a node the walk must not reach.
pub(crate) fn trace_from(d: &Diagram, start: Dart, exits: &[usize], avoid: Option<usize>) -> Result<Traced> {
    let mut cur = start;
    let mut steps = Vec::new();
    let mut seen = BTreeSet::new();
    let mut k = 0;
    loop {
        let a = d.partner(cur);
        if Some(a.node) == avoid {
            return Err(Error::PathNotIncident(format!("path returns to `{}`", d.node(a.node).id)));
        }
        let n = d.node(a.node);
        if n.is_crossing() {
            steps.push(Step::Pass { x: a.node, a: a.slot });
            cur = Dart::new(a.node, (a.slot + 2) % 4);
            continue;
        }
        if !seen.insert(a.node) {
            return Err(Error::PathNotIncident(format!("vertex `{}` visited twice", n.id)));
        }
        if k == exits.len() {
            if n.degree().is_multiple_of(2) {
                return Err(Error::EvenTerminalVertex(n.id.clone()));
            }
            return Ok(Traced { p0: start.slot, steps, terminal: a.node, arrival: a.slot });
        }
        if n.degree() % 2 == 1 {
            return Err(Error::OddInteriorVertex(n.id.clone()));
        }
        let b = exits[k];
        if b >= n.degree() || b == a.slot {
            return Err(Error::PathNotIncident(format!("slot {b} cannot leave vertex `{}`", n.id)));
        }
        steps.push(Step::Vertex { u: a.node, a: a.slot, b });
        cur = Dart::new(a.node, b);
        k += 1;
    }
}

pub(crate) fn dart_of_label(d: &Diagram, node: usize, label: &str) -> Option<Dart> {
    d.node(node).slots.iter().position(|s| s == label).map(|s| Dart::new(node, s))
}

pub(crate) fn trace(d: &Diagram, c: usize, path: &SpurPath) -> Result<Traced> {
    let start = dart_of_label(d, c, &path.start)
        .ok_or_else(|| Error::PathNotIncident(format!("`{}` is not a slot of `{}`", path.start, d.node(c).id)))?;
    trace_from(d, start, &path.exits, Some(c))
}

/// One crossing on the spur, with the labels it is entered and left by.
#[derive(Clone, Debug)]
pub(crate) struct FingerCrossing {
    pub id: String,
    pub enter: String,
    pub exit: String,
    pub stub: bool,
}

/// Crossings of one line at one path step, already linked to each other.
pub(crate) type Event = Vec<FingerCrossing>;

#[derive(Clone, Debug, Serialize)]
pub struct SpurRecord {
    pub crossing: String,
    pub path: SpurPath,
    pub terminal: String,
    /// Whether the stretched strand was over at the crossing.
    pub alpha_over: bool,
    /// Label of the crossing slot the spur leaves from.
    pub alpha: String,
    pub stubs: Vec<String>,
    /// Node/slot pairs that must agree on over/under for retraction.
    pub groups: Vec<Vec<(String, usize)>>,
    pub new_nodes: Vec<String>,
    /// Faces beside the spur grouped by how many stubs precede them.
    pub q_sets: Vec<Vec<String>>,
    /// Odd-indexed groups combined; applying it flips exactly the stubs.
    pub regions: Vec<String>,
    #[serde(skip)]
    pub(crate) before: Diagram,
    #[serde(skip)]
    pub(crate) c_slot_alpha: usize,
    #[serde(skip)]
    pub(crate) lines: BTreeSet<String>,
}

/// Accumulates line events for a spur or finger walk.
pub(crate) struct Lines {
    pub left: Vec<Vec<Event>>,
    pub right: Vec<Vec<Event>>,
    pub groups: Vec<Vec<(String, usize)>>,
}

fn line_crossing(b: &mut Builder, cut_at: &str, over02: bool, stub: bool) -> FingerCrossing {
    let (id, s) = b.crossing(over02);
    // [ahead, far, behind, near]
    b.cut(cut_at, &s[3], &s[1]);
    b.mark_line([&s[0], &s[2]]);
    FingerCrossing { id, enter: s[2].clone(), exit: s[0].clone(), stub }
}

/// Lays the two corridor lines along `steps` and the turn around the terminal.
/// Returns the finger events in walking order (left, tip, right reversed).
pub(crate) fn lay_corridor(b: &mut Builder, d: &Diagram, steps: &[Step], terminal: Option<(usize, usize)>, stub_over: bool) -> (Vec<Event>, Vec<Vec<(String, usize)>>) {
    let mut lines = Lines { left: vec![Vec::new(); steps.len()], right: vec![Vec::new(); steps.len()], groups: Vec::new() };
    let mut passes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, s) in steps.iter().enumerate() {
        if let Step::Pass { x, .. } = s {
            passes.entry(*x).or_default().push(i);
        }
    }
    for (i, s) in steps.iter().enumerate() {
        match *s {
            Step::Pass { x, a } => {
                let occ = &passes[&x];
                if occ.len() == 2 {
                    if occ[0] == i {
                        let Step::Pass { a: a2, .. } = steps[occ[1]] else { unreachable!() };
                        grid(b, d, &mut lines, x, (i, a), (occ[1], a2));
                    }
                    continue;
                }
                let n = d.node(x);
                let over = n.slot_is_over(a);
                let l = line_crossing(b, &n.slots[(a + 3) % 4], over, false);
                let r = line_crossing(b, &n.slots[(a + 1) % 4], over, false);
                lines.groups.push(vec![(l.id.clone(), 0), (n.id.clone(), a), (r.id.clone(), 0)]);
                lines.left[i].push(vec![l]);
                lines.right[i].push(vec![r]);
            }
            Step::Vertex { u, a, b: out } => {
                let n = d.node(u);
                let deg = n.degree();
                let mut j = (a + deg - 1) % deg;
                while j != out {
                    let fc = line_crossing(b, &n.slots[j], stub_over, true);
                    lines.left[i].push(vec![fc]);
                    j = (j + deg - 1) % deg;
                }
                let mut j = (out + deg - 1) % deg;
                while j != a {
                    let fc = line_crossing(b, &n.slots[j], stub_over, true);
                    lines.right[i].push(vec![fc]);
                    j = (j + deg - 1) % deg;
                }
            }
        }
    }
    let mut seq: Vec<Event> = lines.left.into_iter().flatten().collect();
    if let Some((v, a)) = terminal {
        let n = d.node(v);
        let deg = n.degree();
        let mut j = (a + deg - 1) % deg;
        while j != a {
            seq.push(vec![line_crossing(b, &n.slots[j], stub_over, true)]);
            j = (j + deg - 1) % deg;
        }
    }
    for r in lines.right.into_iter().rev() {
        seq.extend(r);
    }
    (seq, lines.groups)
}

/// Both corridors around a crossing the path passes twice: a 3x3 grid whose
/// centre is the crossing itself.
fn grid(b: &mut Builder, d: &Diagram, lines: &mut Lines, x: usize, (ia, a): (usize, usize), (ib, bslot): (usize, usize)) {
    let n = d.node(x);
    let over = n.slot_is_over(a);
    let eastward = bslot == (a + 3) % 4;
    // g[col][row], slots [N, W, S, E]
    let mut g: Vec<Vec<Option<(String, [String; 4])>>> = vec![vec![None; 3]; 3];
    for (col, column) in g.iter_mut().enumerate() {
        for (row, cell) in column.iter_mut().enumerate() {
            if (col, row) != (1, 1) {
                *cell = Some(b.crossing(over));
            }
        }
    }
    let s = |c: usize, r: usize, k: usize| g[c][r].as_ref().unwrap().1[k].clone();
    let id = |c: usize, r: usize| g[c][r].as_ref().unwrap().0.clone();
    const N: usize = 0;
    const W: usize = 1;
    const S: usize = 2;
    const E: usize = 3;
    b.cut(&n.slots[(a + 2) % 4], &s(1, 2, S), &s(1, 2, N));
    b.cut(&n.slots[a], &s(1, 0, N), &s(1, 0, S));
    b.cut(&n.slots[(a + 3) % 4], &s(0, 1, E), &s(0, 1, W));
    b.cut(&n.slots[(a + 1) % 4], &s(2, 1, W), &s(2, 1, E));
    for c in [0, 2] {
        b.connect(&s(c, 0, N), &s(c, 1, S));
        b.connect(&s(c, 1, N), &s(c, 2, S));
    }
    for r in [0, 2] {
        b.connect(&s(0, r, E), &s(1, r, W));
        b.connect(&s(1, r, E), &s(2, r, W));
    }
    for c in 0..3 {
        for r in 0..3 {
            if (c, r) == (1, 1) {
                continue;
            }
            if c != 1 {
                b.mark_line([&s(c, r, N), &s(c, r, S)]);
            }
            if r != 1 {
                b.mark_line([&s(c, r, W), &s(c, r, E)]);
            }
        }
    }
    let fc = |c: usize, r: usize, enter: usize, exit: usize| FingerCrossing { id: id(c, r), enter: s(c, r, enter), exit: s(c, r, exit), stub: false };
    let north = vec![fc(0, 0, S, N), fc(0, 1, S, N), fc(0, 2, S, N)];
    let south = vec![fc(2, 2, N, S), fc(2, 1, N, S), fc(2, 0, N, S)];
    let east_top = vec![fc(0, 2, W, E), fc(1, 2, W, E), fc(2, 2, W, E)];
    let west_bottom = vec![fc(2, 0, E, W), fc(1, 0, E, W), fc(0, 0, E, W)];
    lines.left[ia].push(north);
    lines.right[ia].push(south);
    if eastward {
        lines.left[ib].push(east_top);
        lines.right[ib].push(west_bottom);
    } else {
        lines.left[ib].push(west_bottom);
        lines.right[ib].push(east_top);
    }
    let mut group: Vec<(String, usize)> = Vec::new();
    for c in 0..3 {
        for r in 0..3 {
            if (c, r) != (1, 1) {
                group.push((id(c, r), N));
            }
        }
    }
    group.push((n.id.clone(), a));
    lines.groups.push(group);
}

/// Links consecutive events and hooks the ends to `start`/`end` junctions.
pub(crate) fn link(b: &mut Builder, seq: &[Event], start: &str, end: &str) {
    if seq.is_empty() {
        b.wire(start, end);
        return;
    }
    b.wire(start, &seq[0][0].enter);
    for w in seq.windows(2) {
        b.connect(&w[0].last().unwrap().exit, &w[1][0].enter);
    }
    b.wire(end, &seq.last().unwrap().last().unwrap().exit);
}

/// Faces right of each finger segment, grouped by the number of stubs passed,
/// and the combination of the odd groups.
pub(crate) fn corridor_regions(e: &Diagram, seq: &[Event]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let total = seq.iter().flatten().filter(|f| f.stub).count();
    let mut q: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); total + 1];
    let mut parity = 0;
    for f in seq.iter().flatten() {
        if f.stub {
            parity += 1;
        }
        let x = e.node_index(&f.id).expect("finger crossing present");
        let dart = dart_of_label(e, x, &f.exit).expect("finger label present");
        let face = e.face_right_of(dart);
        if !q[parity].remove(&face) {
            q[parity].insert(face);
        }
    }
    let mut r = BTreeSet::new();
    for set in q.iter().skip(1).step_by(2) {
        for &f in set {
            if !r.remove(&f) {
                r.insert(f);
            }
        }
    }
    (q.into_iter().map(|s| s.into_iter().collect()).collect(), r.into_iter().collect())
}

pub(crate) fn face_ids(d: &Diagram, fs: &[usize]) -> Vec<String> {
    fs.iter().map(|&f| d.face(f).id.clone()).collect()
}

impl SpurRecord {
    /// Half-edge labels on the lines this insertion added.
    pub fn lines(&self) -> &BTreeSet<String> {
        &self.lines
    }
}

/// Inserts a spur at crossing `c` along `path`; `prefix` namespaces new ids.
pub fn spur_insert_with(d: &Diagram, c: &str, path: &SpurPath, v: Option<&str>, prefix: &str) -> Result<(Diagram, SpurRecord)> {
    let ci = d.crossing_index(c)?;
    let t = trace(d, ci, path)?;
    if let Some(v) = v {
        let vi = d.vertex_index(v)?;
        if vi != t.terminal {
            return Err(Error::PathNotIncident(format!("path ends at `{}`, not `{v}`", d.node(t.terminal).id)));
        }
    }
    let cn = d.node(ci).clone();
    let sl = |k: usize| cn.slots[(t.p0 + k) % 4].clone();
    let alpha_over = cn.slot_is_over((t.p0 + 1) % 4);
    let mut b = Builder::new(d, prefix);
    b.remove(&cn.id);
    b.wire(&sl(0), &sl(2));
    let (seq, groups) = lay_corridor(&mut b, d, &t.steps, Some((t.terminal, t.arrival)), alpha_over);
    link(&mut b, &seq, &sl(1), &sl(3));
    let lines = b.lines();
    let e = b.finish()?;
    let (q, r) = corridor_regions(&e, &seq);
    let stubs: Vec<String> = seq.iter().flatten().filter(|f| f.stub).map(|f| f.id.clone()).collect();
    let mut new_nodes: Vec<String> = seq.iter().flatten().map(|f| f.id.clone()).collect();
    new_nodes.sort();
    new_nodes.dedup();
    let rec = SpurRecord {
        crossing: cn.id.clone(),
        path: path.clone(),
        terminal: d.node(t.terminal).id.clone(),
        alpha_over,
        alpha: sl(1),
        stubs,
        groups,
        new_nodes,
        q_sets: q.iter().map(|s| face_ids(&e, s)).collect(),
        regions: face_ids(&e, &r),
        before: d.clone(),
        c_slot_alpha: (t.p0 + 1) % 4,
        lines,
    };
    Ok((e, rec))
}

pub fn spur_insert(d: &Diagram, c: &str, path: &SpurPath, v: &str) -> Result<(Diagram, SpurRecord)> {
    spur_insert_with(d, c, path, Some(v), "s.")
}

pub(crate) fn check_present(e: &Diagram, ids: &[String]) -> Result<()> {
    for id in ids {
        if e.node_index(id).is_none() {
            return Err(Error::Replay(format!("node `{id}` is missing")));
        }
    }
    Ok(())
}

pub(crate) fn over_at(e: &Diagram, id: &str, slot: usize) -> bool {
    e.node(e.node_index(id).unwrap()).slot_is_over(slot)
}

pub(crate) fn check_groups(e: &Diagram, groups: &[Vec<(String, usize)>]) -> Result<()> {
    for g in groups {
        let first = over_at(e, &g[0].0, g[0].1);
        if g.iter().any(|(id, s)| over_at(e, id, *s) != first) {
            return Err(Error::NotRetractable(format!("crossings {} disagree", g.iter().map(|p| p.0.as_str()).collect::<Vec<_>>().join(","))));
        }
    }
    Ok(())
}

/// `before` with the over flags of `e` on its surviving crossings.
pub(crate) fn restore(before: &Diagram, e: &Diagram, skip: &str) -> Diagram {
    let flags: Vec<(usize, bool)> = before
        .crossings()
        .into_iter()
        .filter(|&x| before.node(x).id != skip)
        .map(|x| {
            let id = &before.node(x).id;
            (x, e.over02(e.node_index(id).unwrap()))
        })
        .collect();
    before.with_flags(flags)
}

/// Removes the spur. The crossing comes back with the spur strand over
/// exactly when the spur is over the stubs; without stubs it comes back
/// changed.
pub fn spur_retract(e: &Diagram, rec: &SpurRecord) -> Result<Diagram> {
    check_present(e, &rec.new_nodes)?;
    for x in rec.before.crossings() {
        let id = &rec.before.node(x).id;
        if *id != rec.crossing && e.node_index(id).is_none() {
            return Err(Error::Replay(format!("node `{id}` is missing")));
        }
    }
    let over: Vec<bool> = rec.stubs.iter().map(|s| over_at(e, s, 0)).collect();
    if over.iter().any(|&o| o != over[0]) {
        return Err(Error::NotRetractable("spur is over some stubs and under others".into()));
    }
    check_groups(e, &rec.groups)?;
    let mut out = restore(&rec.before, e, &rec.crossing);
    let ci = rec.before.crossing_index(&rec.crossing)?;
    let alpha_over = match over.first() {
        Some(&o) => o,
        None => !rec.alpha_over,
    };
    let over02 = rec.c_slot_alpha.is_multiple_of(2) == alpha_over;
    out = out.with_flags([(ci, over02)]);
    Ok(out)
}

/// The strand walk from `d` to the next vertex: (arrival dart, arcs, passes through `avoid`).
fn walk_to_vertex(e: &Diagram, start: Dart, avoid: usize) -> Option<(Dart, usize)> {
    let mut cur = start;
    let mut n = 0;
    loop {
        let a = e.partner(cur);
        n += 1;
        if a.node == avoid {
            return None;
        }
        if e.node(a.node).is_vertex() {
            return Some((a, n));
        }
        cur = Dart::new(a.node, (a.slot + 2) % 4);
        if n > 4 * e.arcs().len() {
            return None;
        }
    }
}

/// Shortest paths by arc count from the given first legs, through even
/// vertices only. Returns, per reached vertex, (distance, exits).
pub(crate) fn shortest_from(e: &Diagram, legs: &[(Dart, usize)], avoid: usize) -> BTreeMap<usize, (usize, usize, Vec<usize>)> {
    // vertex -> (dist, leg index, exits)
    let mut best: BTreeMap<usize, (usize, usize, Vec<usize>)> = BTreeMap::new();
    let mut heap = BinaryHeap::new();
    for (li, &(dart, _)) in legs.iter().enumerate() {
        if let Some((arr, n)) = walk_to_vertex(e, dart, avoid) {
            let cand = (n, li, Vec::new());
            if best.get(&arr.node).is_none_or(|b| (cand.0, cand.1) < (b.0, b.1)) {
                best.insert(arr.node, cand);
                heap.push(Reverse((n, li, arr.node)));
            }
        }
    }
    let mut done = BTreeSet::new();
    while let Some(Reverse((dist, _, u))) = heap.pop() {
        if !done.insert(u) {
            continue;
        }
        if e.degree(u) % 2 == 1 {
            continue;
        }
        let (_, li, exits) = best[&u].clone();
        for s in 0..e.degree(u) {
            let Some((arr, n)) = walk_to_vertex(e, Dart::new(u, s), avoid) else { continue };
            let w = arr.node;
            if done.contains(&w) || arr.node == u {
                continue;
            }
            let nd = dist + n;
            if best.get(&w).is_none_or(|b| nd < b.0) {
                let mut ex = exits.clone();
                ex.push(s);
                best.insert(w, (nd, li, ex));
                heap.push(Reverse((nd, li, w)));
            }
        }
    }
    best
}

/// A shortest spur path from crossing `c` to `v`, or to the nearest odd
/// vertex when `v` is `None`. Ties go to the smaller slot label at `c`, then
/// the smaller vertex id.
pub fn shortest_spur_path(d: &Diagram, c: &str, v: Option<&str>) -> Result<(SpurPath, String)> {
    let ci = d.crossing_index(c)?;
    let target = v.map(|v| d.vertex_index(v)).transpose()?;
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&a, &b| d.node(ci).slots[a].cmp(&d.node(ci).slots[b]));
    let legs: Vec<(Dart, usize)> = order.iter().map(|&s| (Dart::new(ci, s), s)).collect();
    let best = shortest_from(d, &legs, ci);
    let pick = best
        .iter()
        .filter(|(&w, _)| d.degree(w) % 2 == 1 && target.is_none_or(|t| t == w))
        .min_by_key(|(&w, (dist, li, _))| (*dist, *li, d.node(w).id.clone()));
    match pick {
        Some((&w, (_, li, exits))) => {
            let p = SpurPath { start: d.node(ci).slots[legs[*li].1].clone(), exits: exits.clone() };
            // the first leg must reach the path's own strand without returning to c
            trace(d, ci, &p)?;
            Ok((p, d.node(w).id.clone()))
        }
        None => Err(Error::PathNotIncident(format!(
            "no path from `{c}` to {} through even vertices",
            v.map_or("an odd vertex".to_string(), |v| format!("`{v}`"))
        ))),
    }
}
