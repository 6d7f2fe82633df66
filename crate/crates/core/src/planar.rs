//! Planarity of the abstract multigraph.
//!
//! Self-loops, parallel edges and vertex-free closed strands never affect
//! planarity, so the test runs on the underlying simple graph.

use std::collections::{HashMap, HashSet};

use rustworkx_core::petgraph::graph::UnGraph;

use crate::diagram::{AbstractGraph, Strand};

pub(crate) fn is_planar(graph: &AbstractGraph, strands: &[Strand]) -> bool {
    let mut g: UnGraph<(), ()> = UnGraph::new_undirected();
    let ix: HashMap<usize, _> = graph.vertices.iter().map(|&v| (v, g.add_node(()))).collect();
    let mut seen = HashSet::new();
    for &e in &graph.edges {
        let (a, b) = strands[e].ends.expect("edges are open strands");
        let (u, v) = (a.node.min(b.node), a.node.max(b.node));
        if u != v && seen.insert((u, v)) {
            g.add_edge(ix[&u], ix[&v], ());
        }
    }
    rustworkx_core::planar::is_planar(&g)
}
