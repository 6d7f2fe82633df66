//! Local surgery on a diagram's half-edge matching.
//!
//! Old nodes keep their ids and slot labels. Removed nodes leave their labels
//! behind as junctions; each junction is wired to exactly one other label and
//! the final arcs are found by chaining through junctions.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::diagram::{Arc, Diagram, Node};
use crate::error::Result;

pub(crate) struct Builder {
    nodes: BTreeMap<String, Node>,
    mate: HashMap<String, String>,
    arc_of: HashMap<String, String>,
    wire: HashMap<String, String>,
    junction: BTreeSet<String>,
    lines: BTreeSet<String>,
    prefix: String,
    next: usize,
}

impl Builder {
    pub fn new(d: &Diagram, prefix: &str) -> Builder {
        let mut nodes = BTreeMap::new();
        for n in d.nodes() {
            nodes.insert(n.id.clone(), n.clone());
        }
        let mut mate = HashMap::new();
        let mut arc_of = HashMap::new();
        for a in d.arcs() {
            mate.insert(a.ends[0].clone(), a.ends[1].clone());
            mate.insert(a.ends[1].clone(), a.ends[0].clone());
            arc_of.insert(a.ends[0].clone(), a.id.clone());
            arc_of.insert(a.ends[1].clone(), a.id.clone());
        }
        Builder { nodes, mate, arc_of, wire: HashMap::new(), junction: BTreeSet::new(), lines: BTreeSet::new(), prefix: prefix.to_string(), next: 0 }
    }

    fn fresh(&mut self, kind: &str) -> String {
        self.next += 1;
        format!("{}{}{}", self.prefix, kind, self.next)
    }

    pub fn label(&mut self) -> String {
        self.fresh("h")
    }

    /// Adds a crossing whose slots get fresh labels; returns (id, labels).
    pub fn crossing(&mut self, over02: bool) -> (String, [String; 4]) {
        let id = self.fresh("x");
        let slots = [self.label(), self.label(), self.label(), self.label()];
        self.nodes.insert(id.clone(), Node::crossing(id.clone(), slots.to_vec(), over02));
        (id, slots)
    }

    pub fn vertex(&mut self, degree: usize) -> (String, Vec<String>) {
        let id = self.fresh("v");
        let slots: Vec<String> = (0..degree).map(|_| self.label()).collect();
        self.nodes.insert(id.clone(), Node::vertex(id.clone(), slots.clone()));
        (id, slots)
    }

    /// Splits the arc at `h` next to `h`: `h - near`, then `far - (old mate)`.
    pub fn cut(&mut self, h: &str, near: &str, far: &str) {
        let p = self.mate[h].clone();
        let old_id = self.arc_of[h].clone();
        let new_id = self.fresh("a");
        self.mate.insert(h.to_string(), near.to_string());
        self.mate.insert(near.to_string(), h.to_string());
        self.arc_of.insert(near.to_string(), old_id);
        self.mate.insert(far.to_string(), p.clone());
        self.mate.insert(p.clone(), far.to_string());
        self.arc_of.insert(far.to_string(), new_id.clone());
        self.arc_of.insert(p, new_id);
    }

    pub fn connect(&mut self, a: &str, b: &str) {
        let id = self.fresh("a");
        self.mate.insert(a.to_string(), b.to_string());
        self.mate.insert(b.to_string(), a.to_string());
        self.arc_of.insert(a.to_string(), id.clone());
        self.arc_of.insert(b.to_string(), id);
    }

    /// Removes a node; its labels become junctions to be wired.
    pub fn remove(&mut self, id: &str) -> Node {
        let n = self.nodes.remove(id).expect("node exists");
        for s in &n.slots {
            self.junction.insert(s.clone());
        }
        n
    }

    /// Joins a junction to another label (junction or not).
    pub fn wire(&mut self, a: &str, b: &str) {
        self.wire.insert(a.to_string(), b.to_string());
        self.wire.insert(b.to_string(), a.to_string());
    }

    /// Replaces the arc id at half-edge `h` (used to keep a stable name).
    pub fn rename_arc(&mut self, h: &str, id: &str) {
        let p = self.mate[h].clone();
        self.arc_of.insert(h.to_string(), id.to_string());
        self.arc_of.insert(p, id.to_string());
    }

    /// Records labels that lie on inserted lines (as opposed to pieces of old arcs).
    pub fn mark_line<'a>(&mut self, labels: impl IntoIterator<Item = &'a String>) {
        self.lines.extend(labels.into_iter().cloned());
    }

    pub fn lines(&self) -> BTreeSet<String> {
        self.lines.clone()
    }

    /// Follows a chain from real label `h` through junctions to the next real
    /// label, collecting the arc ids passed.
    fn chain(&self, h: &str, seen: &mut BTreeSet<String>) -> (String, Vec<String>) {
        let mut ids = Vec::new();
        let (mut cur, mut via_wire) = match self.mate.get(h) {
            Some(m) => {
                ids.push(self.arc_of[h].clone());
                (m.clone(), true)
            }
            None => (self.wire[h].clone(), false),
        };
        while self.junction.contains(&cur) {
            seen.insert(cur.clone());
            if via_wire {
                cur = self.wire[&cur].clone();
            } else {
                ids.push(self.arc_of[&cur].clone());
                cur = self.mate[&cur].clone();
            }
            via_wire = !via_wire;
        }
        (cur, ids)
    }

    pub fn finish(mut self) -> Result<Diagram> {
        let mut arcs = Vec::new();
        let mut done: BTreeSet<String> = BTreeSet::new();
        let real: Vec<String> = self.nodes.values().flat_map(|n| n.slots.iter().cloned()).collect();
        for h in &real {
            if done.contains(h) {
                continue;
            }
            let (end, mut ids) = self.chain(h, &mut done);
            done.insert(h.clone());
            done.insert(end.clone());
            if ids.is_empty() {
                ids.push(self.fresh("a"));
            }
            ids.sort();
            arcs.push(Arc::new(ids[0].clone(), h.clone(), end));
        }
        // junction cycles with no real label left become marker loops
        let leftover: Vec<String> = self.junction.iter().filter(|j| !done.contains(*j)).cloned().collect();
        for j in leftover {
            if done.contains(&j) {
                continue;
            }
            let mut ids = Vec::new();
            let mut cur = j.clone();
            loop {
                done.insert(cur.clone());
                ids.push(self.arc_of[&cur].clone());
                let m = self.mate[&cur].clone();
                done.insert(m.clone());
                cur = self.wire[&m].clone();
                if cur == j {
                    break;
                }
            }
            ids.sort();
            let (_, slots) = self.vertex(2);
            arcs.push(Arc::new(ids[0].clone(), slots[0].clone(), slots[1].clone()));
        }
        let nodes: Vec<Node> = self.nodes.into_values().collect();
        Diagram::new(nodes, arcs)
    }
}
