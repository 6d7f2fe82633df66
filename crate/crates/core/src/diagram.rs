//! Diagrams as combinatorial maps on the sphere.
//!
//! A diagram is a set of nodes (vertices and 4-valent crossings) whose slots
//! hold half-edge labels in counterclockwise order, plus a set of arcs pairing
//! half-edges. Faces come from the rotation system: leave a half-edge along its
//! arc, arrive at slot `j`, and continue out of slot `j + 1`. The face lies to
//! the right of every traversed arc and owns the corner `(node, j)` between
//! slots `j` and `j + 1`.
//!
//! Crossing slots 0,2 form one strand and 1,3 the other; `over02` records
//! whether the (0,2)-strand passes over.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub node: usize,
    pub slot: usize,
}

impl Dart {
    pub fn new(node: usize, slot: usize) -> Self {
        Dart { node, slot }
    }
}

/// Corner of the map: the gap between slot `gap` and slot `gap + 1` of `node`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub node: usize,
    pub gap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Vertex,
    Crossing { over02: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    pub kind: NodeKind,
    pub slots: Vec<String>,
}

impl Node {
    pub fn vertex(id: impl Into<String>, slots: Vec<String>) -> Self {
        Node { id: id.into(), kind: NodeKind::Vertex, slots }
    }

    pub fn crossing(id: impl Into<String>, slots: Vec<String>, over02: bool) -> Self {
        Node { id: id.into(), kind: NodeKind::Crossing { over02 }, slots }
    }

    pub fn is_crossing(&self) -> bool {
        matches!(self.kind, NodeKind::Crossing { .. })
    }

    pub fn is_vertex(&self) -> bool {
        !self.is_crossing()
    }

    pub fn degree(&self) -> usize {
        self.slots.len()
    }

    /// For a crossing, true when the strand through `slot` passes over.
    pub fn slot_is_over(&self, slot: usize) -> bool {
        match self.kind {
            NodeKind::Crossing { over02 } => slot.is_multiple_of(2) == over02,
            NodeKind::Vertex => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub id: String,
    pub ends: [String; 2],
}

impl Arc {
    pub fn new(id: impl Into<String>, a: impl Into<String>, b: impl Into<String>) -> Self {
        Arc { id: id.into(), ends: [a.into(), b.into()] }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: String,
    /// Corners in traversal order; a face merged across shadow components
    /// concatenates the boundary cycles.
    pub corners: Vec<Corner>,
    /// Crossing node indices on the boundary, set semantics, ascending.
    pub crossings: Vec<usize>,
}

/// A maximal arc sequence passing straight through crossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strand {
    pub id: String,
    /// Departure darts, one per arc, in traversal order.
    pub darts: Vec<Dart>,
    pub arcs: Vec<usize>,
    /// `(first departure dart, last arrival dart)` at vertices, or `None` when closed.
    pub ends: Option<(Dart, Dart)>,
}

impl Strand {
    pub fn is_closed(&self) -> bool {
        self.ends.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractGraph {
    /// Vertex node indices, ascending.
    pub vertices: Vec<usize>,
    /// Open strands (graph edges).
    pub edges: Vec<usize>,
    /// Closed strands (knot components without vertices).
    pub loops: Vec<usize>,
    /// Component of each strand, components numbered in canonical order.
    pub strand_component: Vec<usize>,
    /// Component of each node that is a vertex (`None` for crossings).
    pub vertex_component: Vec<Option<usize>>,
    pub degree: Vec<usize>,
    pub component_count: usize,
}

impl AbstractGraph {
    pub fn component_vertices(&self, comp: usize) -> Vec<usize> {
        self.vertices.iter().copied().filter(|&v| self.vertex_component[v] == Some(comp)).collect()
    }

    pub fn component_strands(&self, comp: usize) -> Vec<usize> {
        (0..self.strand_component.len()).filter(|&s| self.strand_component[s] == comp).collect()
    }

    /// Degree-2 vertices are transparent to every invariant.
    pub fn is_marker(&self, v: usize) -> bool {
        self.degree[v] == 2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossingKind {
    SelfCrossing(usize),
    NonSelf(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingClass {
    pub kind: CrossingKind,
    pub reducible: bool,
}

pub fn component_name(comp: usize) -> String {
    format!("K{}", comp + 1)
}

#[derive(Clone, Debug)]
pub struct Diagram {
    nodes: Vec<Node>,
    arcs: Vec<Arc>,
    node_index: HashMap<String, usize>,
    arc_index: HashMap<String, usize>,
    partner: Vec<Vec<Dart>>,
    arc_at: Vec<Vec<usize>>,
    faces: Vec<Face>,
    corner_face: Vec<Vec<usize>>,
    strands: Vec<Strand>,
    /// Strand through each dart.
    strand_at: Vec<Vec<usize>>,
    /// Whether the strand leaves through each dart in its stored direction.
    departs: Vec<Vec<bool>>,
    graph: AbstractGraph,
    shadow_components: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let n = self.0[y];
            self.0[y] = r;
            y = n;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl Diagram {
    /// Validate raw nodes and arcs and derive faces, strands and the abstract graph.
    pub fn new(mut nodes: Vec<Node>, mut arcs: Vec<Arc>) -> Result<Diagram> {
        nodes.sort_by(|a, b| a.id.cmp(&b.id));
        arcs.sort_by(|a, b| a.id.cmp(&b.id));
        let mut node_index = HashMap::new();
        for (i, n) in nodes.iter().enumerate() {
            if node_index.insert(n.id.clone(), i).is_some() {
                return Err(Error::DuplicateId(n.id.clone()));
            }
            match n.kind {
                NodeKind::Crossing { .. } if n.slots.len() != 4 => {
                    return Err(Error::MalformedCrossing { id: n.id.clone(), slots: n.slots.len() })
                }
                NodeKind::Vertex if n.slots.is_empty() => return Err(Error::EmptyVertex(n.id.clone())),
                _ => {}
            }
        }
        let mut arc_index = HashMap::new();
        for (i, a) in arcs.iter().enumerate() {
            if node_index.contains_key(&a.id) || arc_index.insert(a.id.clone(), i).is_some() {
                return Err(Error::DuplicateId(a.id.clone()));
            }
        }
        let mut he: HashMap<&str, Dart> = HashMap::new();
        for (i, n) in nodes.iter().enumerate() {
            for (s, h) in n.slots.iter().enumerate() {
                if he.insert(h.as_str(), Dart::new(i, s)).is_some() {
                    return Err(Error::DanglingHalfEdge(h.clone()));
                }
            }
        }
        let unset = Dart::new(usize::MAX, usize::MAX);
        let mut partner: Vec<Vec<Dart>> = nodes.iter().map(|n| vec![unset; n.degree()]).collect();
        let mut arc_at: Vec<Vec<usize>> = nodes.iter().map(|n| vec![usize::MAX; n.degree()]).collect();
        for (ai, a) in arcs.iter().enumerate() {
            if a.ends[0] == a.ends[1] {
                return Err(Error::DegenerateArc(a.id.clone()));
            }
            let mut ds = [unset; 2];
            for k in 0..2 {
                let d = *he.get(a.ends[k].as_str()).ok_or_else(|| Error::DanglingHalfEdge(a.ends[k].clone()))?;
                if arc_at[d.node][d.slot] != usize::MAX {
                    return Err(Error::DanglingHalfEdge(a.ends[k].clone()));
                }
                arc_at[d.node][d.slot] = ai;
                ds[k] = d;
            }
            partner[ds[0].node][ds[0].slot] = ds[1];
            partner[ds[1].node][ds[1].slot] = ds[0];
        }
        for (i, n) in nodes.iter().enumerate() {
            for s in 0..n.degree() {
                if arc_at[i][s] == usize::MAX {
                    return Err(Error::DanglingHalfEdge(n.slots[s].clone()));
                }
            }
        }

        // shadow components
        let mut uf = UnionFind::new(nodes.len());
        for (i, row) in partner.iter().enumerate() {
            for d in row {
                uf.union(i, d.node);
            }
        }
        let mut shadow_of = vec![0usize; nodes.len()];
        let mut shadow_ids: HashMap<usize, usize> = HashMap::new();
        for i in 0..nodes.len() {
            let r = uf.find(i);
            let next = shadow_ids.len();
            shadow_of[i] = *shadow_ids.entry(r).or_insert(next);
        }
        let shadow_components = shadow_ids.len();

        // face orbits
        let mut orbit_of: Vec<Vec<usize>> = nodes.iter().map(|n| vec![usize::MAX; n.degree()]).collect();
        let mut orbits: Vec<Vec<Corner>> = Vec::new();
        for i in 0..nodes.len() {
            for s in 0..nodes[i].degree() {
                if orbit_of[i][s] != usize::MAX {
                    continue;
                }
                let start = Dart::new(i, s);
                let mut d = start;
                let mut corners = Vec::new();
                loop {
                    let a = partner[d.node][d.slot];
                    corners.push(Corner { node: a.node, gap: a.slot });
                    orbit_of[d.node][d.slot] = orbits.len();
                    d = Dart::new(a.node, (a.slot + 1) % nodes[a.node].degree());
                    if d == start {
                        break;
                    }
                }
                orbits.push(corners);
            }
        }
        // Each shadow component's outer face is the orbit holding its smallest
        // corner; all outer faces of distinct shadow components form one region.
        let mut merged: Vec<Vec<Corner>> = Vec::new();
        let mut outer: Vec<Corner> = Vec::new();
        let mut seen_shadow = vec![false; shadow_components];
        let mut orbit_order: Vec<usize> = (0..orbits.len()).collect();
        orbit_order.sort_by_key(|&o| *orbits[o].iter().min().unwrap());
        let mut min_corner_per_shadow: Vec<Option<Corner>> = vec![None; shadow_components];
        for o in &orbits {
            let m = *o.iter().min().unwrap();
            let sc = shadow_of[m.node];
            if min_corner_per_shadow[sc].is_none_or(|c| m < c) {
                min_corner_per_shadow[sc] = Some(m);
            }
        }
        for &o in &orbit_order {
            let m = *orbits[o].iter().min().unwrap();
            let sc = shadow_of[m.node];
            if shadow_components > 1 && min_corner_per_shadow[sc] == Some(m) && !seen_shadow[sc] {
                seen_shadow[sc] = true;
                outer.extend(orbits[o].iter().copied());
            } else {
                merged.push(orbits[o].clone());
            }
        }
        if !outer.is_empty() {
            merged.push(outer);
        }
        merged.sort_by_key(|c| *c.iter().min().unwrap());

        let v = nodes.len() as i64;
        let e = arcs.len() as i64;
        let f = merged.len() as i64;
        let surrogate = v - e + f - 1 - shadow_components as i64;
        if surrogate != 0 {
            return Err(Error::NonSpherical { surrogate });
        }

        let mut corner_face: Vec<Vec<usize>> = nodes.iter().map(|n| vec![0; n.degree()]).collect();
        let mut faces = Vec::with_capacity(merged.len());
        for (fi, corners) in merged.into_iter().enumerate() {
            let mut xs = BTreeSet::new();
            for c in &corners {
                corner_face[c.node][c.gap] = fi;
                if nodes[c.node].is_crossing() {
                    xs.insert(c.node);
                }
            }
            faces.push(Face { id: format!("f{fi}"), corners, crossings: xs.into_iter().collect() });
        }

        let (strands, strand_at) = trace_strands(&nodes, &arcs, &partner, &arc_at);
        let graph = build_graph(&nodes, &strands, &strand_at);
        let mut departs: Vec<Vec<bool>> = nodes.iter().map(|n| vec![false; n.degree()]).collect();
        for s in &strands {
            for d in &s.darts {
                departs[d.node][d.slot] = true;
            }
        }

        Ok(Diagram {
            nodes,
            arcs,
            node_index,
            arc_index,
            partner,
            arc_at,
            faces,
            corner_face,
            strands,
            strand_at,
            departs,
            graph,
            shadow_components,
        })
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }
    pub fn node(&self, i: usize) -> &Node {
        &self.nodes[i]
    }
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }
    pub fn arc(&self, i: usize) -> &Arc {
        &self.arcs[i]
    }
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }
    pub fn face(&self, i: usize) -> &Face {
        &self.faces[i]
    }
    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }
    pub fn graph(&self) -> &AbstractGraph {
        &self.graph
    }
    pub fn shadow_components(&self) -> usize {
        self.shadow_components
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.node_index.get(id).copied()
    }
    pub fn arc_index(&self, id: &str) -> Option<usize> {
        self.arc_index.get(id).copied()
    }

    pub fn crossing_index(&self, id: &str) -> Result<usize> {
        match self.node_index(id) {
            Some(i) if self.nodes[i].is_crossing() => Ok(i),
            _ => Err(Error::UnknownCrossing(id.to_string())),
        }
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        match self.node_index(id) {
            Some(i) if self.nodes[i].is_vertex() => Ok(i),
            _ => Err(Error::UnknownVertex(id.to_string())),
        }
    }

    pub fn face_index(&self, id: &str) -> Result<usize> {
        id.strip_prefix('f')
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| n < self.faces.len() && self.faces[n].id == id)
            .ok_or_else(|| Error::UnknownFace(id.to_string()))
    }

    /// Crossing node indices, ascending (= canonical id order).
    pub fn crossings(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].is_crossing()).collect()
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].is_vertex()).collect()
    }

    pub fn partner(&self, d: Dart) -> Dart {
        self.partner[d.node][d.slot]
    }

    pub fn arc_at(&self, d: Dart) -> usize {
        self.arc_at[d.node][d.slot]
    }

    pub fn half_edge(&self, d: Dart) -> &str {
        &self.nodes[d.node].slots[d.slot]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.nodes[node].degree()
    }

    pub fn corner_face(&self, c: Corner) -> usize {
        self.corner_face[c.node][c.gap]
    }

    /// Face to the right of the arc leaving `d`.
    pub fn face_right_of(&self, d: Dart) -> usize {
        let a = self.partner(d);
        self.corner_face(Corner { node: a.node, gap: a.slot })
    }

    /// Face to the left of the arc leaving `d`.
    pub fn face_left_of(&self, d: Dart) -> usize {
        self.corner_face(Corner { node: d.node, gap: d.slot })
    }

    pub fn strand_at(&self, d: Dart) -> usize {
        self.strand_at[d.node][d.slot]
    }

    /// True when the strand through `d` leaves the node there in its stored direction.
    pub fn departs(&self, d: Dart) -> bool {
        self.departs[d.node][d.slot]
    }

    pub fn component_of_strand(&self, s: usize) -> usize {
        self.graph.strand_component[s]
    }

    pub fn is_over(&self, d: Dart) -> bool {
        self.nodes[d.node].slot_is_over(d.slot)
    }

    pub fn over02(&self, x: usize) -> bool {
        match self.nodes[x].kind {
            NodeKind::Crossing { over02 } => over02,
            NodeKind::Vertex => panic!("node {} is not a crossing", self.nodes[x].id),
        }
    }

    /// Components of the two strands at crossing `x`: `(pair 0-2, pair 1-3)`.
    pub fn crossing_components(&self, x: usize) -> (usize, usize) {
        let a = self.component_of_strand(self.strand_at(Dart::new(x, 0)));
        let b = self.component_of_strand(self.strand_at(Dart::new(x, 1)));
        (a, b)
    }

    pub fn is_reducible(&self, x: usize) -> bool {
        let f = &self.corner_face[x];
        f[0] == f[2] || f[1] == f[3]
    }

    pub fn classify_crossing(&self, id: &str) -> Result<CrossingClass> {
        let x = self.crossing_index(id)?;
        Ok(self.classify(x))
    }

    pub fn classify(&self, x: usize) -> CrossingClass {
        let (a, b) = self.crossing_components(x);
        let kind = if a == b { CrossingKind::SelfCrossing(a) } else { CrossingKind::NonSelf(a.min(b), a.max(b)) };
        CrossingClass { kind, reducible: self.is_reducible(x) }
    }

    pub fn is_self_crossing(&self, x: usize) -> bool {
        let (a, b) = self.crossing_components(x);
        a == b
    }

    /// Canonical component order; components are numbered in this order.
    pub fn component_order(&self) -> Vec<usize> {
        (0..self.graph.component_count).collect()
    }

    pub fn is_planar_abstract(&self) -> bool {
        crate::planar::is_planar(&self.graph, &self.strands)
    }

    /// A copy with over/under toggled at the given crossing indices.
    pub(crate) fn with_toggled(&self, xs: impl IntoIterator<Item = usize>) -> Diagram {
        let mut d = self.clone();
        for x in xs {
            if let NodeKind::Crossing { over02 } = &mut d.nodes[x].kind {
                *over02 = !*over02;
            }
        }
        d
    }

    /// A copy with the given over flags (node index, over02).
    pub(crate) fn with_flags(&self, flags: impl IntoIterator<Item = (usize, bool)>) -> Diagram {
        let mut d = self.clone();
        for (x, f) in flags {
            if let NodeKind::Crossing { over02 } = &mut d.nodes[x].kind {
                *over02 = f;
            }
        }
        d
    }

    /// Raw parts, for rebuilding.
    pub fn to_parts(&self) -> (Vec<Node>, Vec<Arc>) {
        (self.nodes.clone(), self.arcs.clone())
    }

    /// Canonical form used for equality: vertex slots rotated to the smallest
    /// label, crossing slots rotated so the over pair is at 0,2 with the smaller
    /// label first, arc ends sorted.
    pub fn canonical_form(&self) -> (Vec<(String, bool, Vec<String>)>, Vec<(String, String, String)>) {
        let nodes = self
            .nodes
            .iter()
            .map(|n| match n.kind {
                NodeKind::Vertex => {
                    let k = (0..n.degree()).min_by(|&a, &b| n.slots[a].cmp(&n.slots[b])).unwrap();
                    let slots = (0..n.degree()).map(|i| n.slots[(i + k) % n.degree()].clone()).collect();
                    (n.id.clone(), false, slots)
                }
                NodeKind::Crossing { over02 } => {
                    let base = if over02 { 0 } else { 1 };
                    let alt = base + 2;
                    let r = if n.slots[base] <= n.slots[alt] { base } else { alt };
                    let slots = (0..4).map(|i| n.slots[(i + r) % 4].clone()).collect();
                    (n.id.clone(), true, slots)
                }
            })
            .collect();
        let arcs = self
            .arcs
            .iter()
            .map(|a| {
                let (x, y) = if a.ends[0] <= a.ends[1] { (&a.ends[0], &a.ends[1]) } else { (&a.ends[1], &a.ends[0]) };
                (a.id.clone(), x.clone(), y.clone())
            })
            .collect();
        (nodes, arcs)
    }

    /// Labeled equality up to slot rotation.
    pub fn same_as(&self, other: &Diagram) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    /// Node ids of crossings whose over flag differs from `other` (same structure assumed).
    pub fn crossing_diff(&self, other: &Diagram) -> Vec<String> {
        let mut out = Vec::new();
        for x in self.crossings() {
            let id = &self.nodes[x].id;
            match other.node_index(id) {
                Some(y) if other.nodes[y].is_crossing() => {
                    let a = self.nodes[x].slot_is_over(0);
                    let h = &self.nodes[x].slots[0];
                    let ys = other.nodes[y].slots.iter().position(|s| s == h);
                    let b = ys.map(|s| other.nodes[y].slot_is_over(s));
                    if b != Some(a) {
                        out.push(id.clone());
                    }
                }
                _ => out.push(id.clone()),
            }
        }
        out
    }

    pub fn euler_characteristic_check(&self) -> (i64, i64) {
        let lhs = self.nodes.len() as i64 - self.arcs.len() as i64 + self.faces.len() as i64;
        (lhs, 1 + self.shadow_components as i64)
    }
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::codec::serialize(self))
    }
}

fn trace_strands(
    nodes: &[Node],
    arcs: &[Arc],
    partner: &[Vec<Dart>],
    arc_at: &[Vec<usize>],
) -> (Vec<Strand>, Vec<Vec<usize>>) {
    let mut strand_at: Vec<Vec<usize>> = nodes.iter().map(|n| vec![usize::MAX; n.degree()]).collect();
    let mut strands = Vec::new();
    let walk = |start: Dart, strand_at: &mut Vec<Vec<usize>>, sid: usize| -> (Vec<Dart>, Vec<usize>, Option<Dart>) {
        let mut darts = Vec::new();
        let mut arcs_seq = Vec::new();
        let mut d = start;
        loop {
            darts.push(d);
            arcs_seq.push(arc_at[d.node][d.slot]);
            strand_at[d.node][d.slot] = sid;
            let a = partner[d.node][d.slot];
            strand_at[a.node][a.slot] = sid;
            if nodes[a.node].is_vertex() {
                return (darts, arcs_seq, Some(a));
            }
            d = Dart::new(a.node, (a.slot + 2) % 4);
            if d == start {
                return (darts, arcs_seq, None);
            }
        }
    };
    for (i, n) in nodes.iter().enumerate() {
        if n.is_crossing() {
            continue;
        }
        for s in 0..n.degree() {
            if strand_at[i][s] != usize::MAX {
                continue;
            }
            let sid = strands.len();
            let (darts, arcs_seq, end) = walk(Dart::new(i, s), &mut strand_at, sid);
            strands.push(Strand {
                id: format!("s{sid}"),
                darts,
                arcs: arcs_seq,
                ends: Some((Dart::new(i, s), end.unwrap())),
            });
        }
    }
    // closed strands: start at the smallest remaining arc, leaving its first end
    let mut he: HashMap<&str, Dart> = HashMap::new();
    for (i, n) in nodes.iter().enumerate() {
        for (s, h) in n.slots.iter().enumerate() {
            he.insert(h.as_str(), Dart::new(i, s));
        }
    }
    for a in arcs {
        let d = he[a.ends[0].as_str()];
        if strand_at[d.node][d.slot] != usize::MAX {
            continue;
        }
        let sid = strands.len();
        let (darts, arcs_seq, end) = walk(d, &mut strand_at, sid);
        debug_assert!(end.is_none());
        strands.push(Strand { id: format!("s{sid}"), darts, arcs: arcs_seq, ends: None });
    }
    (strands, strand_at)
}

fn build_graph(nodes: &[Node], strands: &[Strand], strand_at: &[Vec<usize>]) -> AbstractGraph {
    let n = nodes.len();
    let mut uf = UnionFind::new(n + strands.len());
    for (si, s) in strands.iter().enumerate() {
        if let Some((a, b)) = s.ends {
            uf.union(n + si, a.node);
            uf.union(n + si, b.node);
        }
    }
    // component key: (smallest node touched, smallest arc)
    let mut key: HashMap<usize, (usize, usize)> = HashMap::new();
    for (si, s) in strands.iter().enumerate() {
        let r = uf.find(n + si);
        let mut k = (usize::MAX, *s.arcs.iter().min().unwrap());
        for d in &s.darts {
            k.0 = k.0.min(d.node);
        }
        if let Some((_, b)) = s.ends {
            k.0 = k.0.min(b.node);
        }
        let e = key.entry(r).or_insert(k);
        *e = (*e).min(k);
    }
    for (i, node) in nodes.iter().enumerate() {
        if node.is_vertex() {
            let r = uf.find(i);
            let e = key.entry(r).or_insert((i, usize::MAX));
            e.0 = e.0.min(i);
        }
    }
    let mut roots: Vec<(usize, usize)> = key.keys().copied().map(|r| (r, 0)).collect();
    roots.sort_by_key(|&(r, _)| key[&r]);
    let comp_of_root: HashMap<usize, usize> = roots.iter().enumerate().map(|(c, &(r, _))| (r, c)).collect();
    let strand_component = (0..strands.len()).map(|si| comp_of_root[&uf.find(n + si)]).collect();
    let vertex_component =
        (0..n).map(|i| if nodes[i].is_vertex() { Some(comp_of_root[&uf.find(i)]) } else { None }).collect();
    let _ = strand_at;
    AbstractGraph {
        vertices: (0..n).filter(|&i| nodes[i].is_vertex()).collect(),
        edges: (0..strands.len()).filter(|&s| !strands[s].is_closed()).collect(),
        loops: (0..strands.len()).filter(|&s| strands[s].is_closed()).collect(),
        strand_component,
        vertex_component,
        degree: nodes.iter().map(|x| if x.is_vertex() { x.degree() } else { 0 }).collect(),
        component_count: roots.len(),
    }
}
