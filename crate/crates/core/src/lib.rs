//! Spatial-graph diagrams on the sphere and region crossing changes.
//!
//! The crate models a diagram as a combinatorial map, derives its regions,
//! solves region-crossing-change systems over GF(2), computes linking and
//! warping invariants, implements the spur and finger transformations used to
//! realize arbitrary crossing changes on non-Eulerian graphs, and decides
//! unknottability and complete splittability with replayable witnesses.

pub mod codec;
pub mod corpus;
pub mod decide;
pub mod diagram;
pub mod error;
pub mod gf2;
pub mod invariants;
pub mod oracle;
mod planar;
pub mod transform;

pub use diagram::{AbstractGraph, Arc, Corner, CrossingClass, CrossingKind, Dart, Diagram, Face, Node, NodeKind, Strand};
pub use error::{Error, Result};
