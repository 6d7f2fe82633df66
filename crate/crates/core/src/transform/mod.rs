//! Diagram transformations: crossing changes, region crossing changes,
//! vertex splitting, spurs and finger gadgets.

mod builder;
mod gadget;
mod marks;
mod spur;

use std::collections::BTreeSet;

use crate::diagram::{Corner, Diagram, Node};
use crate::error::{Error, Result};

pub use gadget::{far_gadget, far_gadget_with, finger_spec, gadget_retract, shortest_vertex_path, vertex_path_with_length, BasePath, FingerSpec, GadgetRecord};
pub use marks::MarkTracker;
pub use spur::{shortest_spur_path, spur_insert, spur_insert_with, spur_retract, SpurPath, SpurRecord};

/// Toggles over/under at the named crossings.
pub fn apply_crossing_changes(d: &Diagram, ids: &[impl AsRef<str>]) -> Result<Diagram> {
    let xs = ids.iter().map(|s| d.crossing_index(s.as_ref())).collect::<Result<Vec<_>>>()?;
    Ok(toggle(d, &xs))
}

/// Toggles each listed crossing index once per occurrence.
pub fn toggle(d: &Diagram, xs: &[usize]) -> Diagram {
    let mut odd = BTreeSet::new();
    for &x in xs {
        if !odd.remove(&x) {
            odd.insert(x);
        }
    }
    d.with_toggled(odd)
}

/// Crossings flipped by a region set: each crossing once per face whose
/// boundary it lies on.
pub fn region_effect(d: &Diagram, faces: &[usize]) -> Vec<usize> {
    let mut odd = BTreeSet::new();
    for &f in faces {
        for &x in &d.face(f).crossings {
            if !odd.remove(&x) {
                odd.insert(x);
            }
        }
    }
    odd.into_iter().collect()
}

pub fn apply_regions(d: &Diagram, faces: &[usize]) -> Diagram {
    d.with_toggled(region_effect(d, faces))
}

/// Region crossing change at the named faces.
pub fn apply_region_set(d: &Diagram, ids: &[impl AsRef<str>]) -> Result<Diagram> {
    let mut fs = Vec::new();
    for id in ids {
        fs.push(d.face_index(id.as_ref())?);
    }
    Ok(apply_regions(d, &fs))
}

/// Where each face of `old` went in `new`, following corners at nodes that
/// kept their id and slot labels.
pub(crate) fn corner_in(old: &Diagram, new: &Diagram, c: Corner) -> Option<Corner> {
    let n = old.node(c.node);
    let j = new.node_index(&n.id)?;
    let m = new.node(j);
    let a = m.slots.iter().position(|s| *s == n.slots[c.gap])?;
    let b = m.slots.iter().position(|s| *s == n.slots[(c.gap + 1) % n.degree()])?;
    (b == (a + 1) % m.degree()).then_some(Corner { node: j, gap: a })
}

/// Splits vertex `v` into two: the slots in `group` (cyclically contiguous)
/// move to `{v}.a`, the rest to `{v}.b`. Returns the new diagram and the
/// face each old face lies in.
pub fn vertex_split(d: &Diagram, v: &str, group: &[usize]) -> Result<(Diagram, Vec<usize>)> {
    let vi = d.vertex_index(v)?;
    let n = d.node(vi).clone();
    let deg = n.degree();
    let mut g: Vec<usize> = group.to_vec();
    g.sort();
    g.dedup();
    if g.is_empty() || g.len() >= deg || g.iter().any(|&s| s >= deg) {
        return Err(Error::NonContiguousPairing);
    }
    // the group must start right after a slot outside it and run on
    let start = *g.iter().find(|&&s| !g.contains(&((s + deg - 1) % deg))).unwrap();
    let run: Vec<usize> = (0..g.len()).map(|i| (start + i) % deg).collect();
    if run.iter().any(|s| !g.contains(s)) {
        return Err(Error::NonContiguousPairing);
    }
    let rest: Vec<usize> = (g.len()..deg).map(|i| (start + i) % deg).collect();
    let (mut nodes, arcs) = d.to_parts();
    nodes.retain(|m| m.id != n.id);
    let pick = |ss: &[usize]| ss.iter().map(|&s| n.slots[s].clone()).collect::<Vec<_>>();
    nodes.push(Node::vertex(format!("{v}.a"), pick(&run)));
    nodes.push(Node::vertex(format!("{v}.b"), pick(&rest)));
    let e = Diagram::new(nodes, arcs)?;
    let a_id = e.vertex_index(&format!("{v}.a")).unwrap();
    let b_id = e.vertex_index(&format!("{v}.b")).unwrap();
    let at_v = |gap: usize| -> Corner {
        let (i, j) = (gap, (gap + 1) % deg);
        let pa = |s: usize| run.iter().position(|&r| r == s);
        let pb = |s: usize| rest.iter().position(|&r| r == s);
        match (pa(i), pa(j), pb(i), pb(j)) {
            (Some(x), Some(y), _, _) if y == x + 1 => Corner { node: a_id, gap: x },
            (_, _, Some(x), Some(y)) if y == x + 1 => Corner { node: b_id, gap: x },
            // the two boundary gaps open into one face
            _ => Corner { node: a_id, gap: run.len() - 1 },
        }
    };
    let map = d
        .faces()
        .iter()
        .map(|f| {
            let c = f.corners[0];
            let nc = if c.node == vi { at_v(c.gap) } else { corner_in(d, &e, c).expect("untouched corner") };
            e.corner_face(nc)
        })
        .collect();
    Ok((e, map))
}

/// Splits the vertices of an Eulerian component two edge-ends at a time,
/// keeping it connected, until it is a single closed curve through
/// degree-2 vertices. Returns the diagram and the accumulated face map.
pub fn knotify(d: &Diagram, comp: usize) -> Result<(Diagram, Vec<usize>)> {
    let g = d.graph();
    if comp >= g.component_count {
        return Err(Error::UnknownComponent(crate::diagram::component_name(comp)));
    }
    let odd: Vec<String> = g.component_vertices(comp).into_iter().filter(|&v| g.degree[v] % 2 == 1).map(|v| d.node(v).id.clone()).collect();
    if !odd.is_empty() {
        return Err(Error::NotEulerian { component: comp, odd });
    }
    let mut cur = d.clone();
    let mut map: Vec<usize> = (0..d.faces().len()).collect();
    // a node of the component, to find it again after renumbering
    let anchor = |e: &Diagram, comp: usize| -> Option<String> {
        let g = e.graph();
        g.component_vertices(comp).first().map(|&v| e.node(v).id.clone())
    };
    let Some(mut anchor_id) = anchor(d, comp) else { return Ok((cur, map)) };
    loop {
        let g = cur.graph();
        let c = g.vertex_component[cur.vertex_index(&anchor_id)?].unwrap();
        let Some(v) = g.component_vertices(c).into_iter().find(|&v| g.degree[v] >= 4) else { break };
        let id = cur.node(v).id.clone();
        let deg = g.degree[v];
        let count = g.component_count;
        let mut done = false;
        for i in 0..deg {
            let (e, m) = vertex_split(&cur, &id, &[i, (i + 1) % deg])?;
            if e.graph().component_count == count {
                map = map.iter().map(|&f| m[f]).collect();
                cur = e;
                anchor_id = format!("{id}.b");
                done = true;
                break;
            }
        }
        if !done {
            return Err(Error::NotConnected(c));
        }
    }
    Ok((cur, map))
}
