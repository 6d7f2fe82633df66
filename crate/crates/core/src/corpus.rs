//! Bundled fixture diagrams.

use crate::codec;
use crate::diagram::Diagram;

pub const CORPUS: &[(&str, &str)] = &[
    ("unknot0", include_str!("../../../corpus/unknot0.sgd")),
    ("hopf", include_str!("../../../corpus/hopf.sgd")),
    ("unlink2x", include_str!("../../../corpus/unlink2x.sgd")),
    ("trefoil", include_str!("../../../corpus/trefoil.sgd")),
    ("t24", include_str!("../../../corpus/t24.sgd")),
    ("theta0", include_str!("../../../corpus/theta0.sgd")),
    ("handcuff0", include_str!("../../../corpus/handcuff0.sgd")),
    ("linked_triangles", include_str!("../../../corpus/linked_triangles.sgd")),
    ("reduc1", include_str!("../../../corpus/reduc1.sgd")),
    ("nonplanar_k5", include_str!("../../../corpus/nonplanar_k5.sgd")),
];

/// Parses a bundled diagram by name.
pub fn load(name: &str) -> Option<Diagram> {
    CORPUS.iter().find(|(n, _)| *n == name).map(|(_, t)| codec::parse(t).expect("bundled corpus parses"))
}

pub fn all() -> Vec<(&'static str, Diagram)> {
    CORPUS.iter().map(|(n, t)| (*n, codec::parse(t).expect("bundled corpus parses"))).collect()
}
