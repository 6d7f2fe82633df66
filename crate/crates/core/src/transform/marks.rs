//! Carrying a set of marked faces across insertions.
//!
//! Inserted lines cut old faces into pieces. A new face descends from the old
//! faces whose corners it keeps at surviving nodes; pieces separated only by
//! inserted lines share their ancestry. A mark passes to every piece of a
//! marked face.

use std::collections::BTreeSet;

use crate::diagram::Diagram;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MarkTracker {
    pub marked: BTreeSet<usize>,
    /// Set when some new face could not be traced to exactly one side of the marks.
    pub ambiguous: bool,
}

impl MarkTracker {
    pub fn new(faces: impl IntoIterator<Item = usize>) -> Self {
        let mut t = MarkTracker::default();
        t.toggle(faces);
        t
    }

    /// Symmetric difference with `faces`.
    pub fn toggle(&mut self, faces: impl IntoIterator<Item = usize>) {
        for f in faces {
            if !self.marked.remove(&f) {
                self.marked.insert(f);
            }
        }
    }

    pub fn faces(&self) -> Vec<usize> {
        self.marked.iter().copied().collect()
    }

    /// Moves the marks from `old` to `new`, where `lines` are the half-edge
    /// labels of lines inserted in between.
    pub fn transport(&mut self, old: &Diagram, new: &Diagram, lines: &BTreeSet<String>) {
        let nf = new.faces().len();
        let mut parent: Vec<usize> = (0..nf).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for a in new.arcs() {
            if lines.contains(&a.ends[0]) && lines.contains(&a.ends[1]) {
                let j = new.node_index(&new_node_of(new, &a.ends[0])).unwrap();
                let s = new.node(j).slots.iter().position(|h| *h == a.ends[0]).unwrap();
                let d = crate::diagram::Dart::new(j, s);
                let (x, y) = (find(&mut parent, new.face_right_of(d)), find(&mut parent, new.face_left_of(d)));
                parent[x.max(y)] = x.min(y);
            }
        }
        let mut prov: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nf];
        for (fi, f) in new.faces().iter().enumerate() {
            for &c in &f.corners {
                if let Some(oc) = super::corner_in(new, old, c) {
                    let r = find(&mut parent, fi);
                    prov[r].insert(old.corner_face(oc));
                }
            }
        }
        let mut next = BTreeSet::new();
        for fi in 0..nf {
            let r = find(&mut parent, fi);
            let p = &prov[r];
            let hit = p.iter().filter(|f| self.marked.contains(f)).count();
            if hit > 0 && hit == p.len() {
                next.insert(fi);
            } else if !self.marked.is_empty() && (p.is_empty() || hit > 0) {
                self.ambiguous = true;
            }
        }
        self.marked = next;
    }
}

fn new_node_of(d: &Diagram, label: &str) -> String {
    d.nodes().iter().find(|n| n.slots.iter().any(|s| s == label)).map(|n| n.id.clone()).unwrap()
}
