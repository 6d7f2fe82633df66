//! The SGD text format and the JSON report envelope.
//!
//! ```text
//! # comment
//! vertex v1 : h1 h2
//! crossing x1 : a b c d     # slots counterclockwise, a-c passes over b-d
//! arc e1 : h1 a
//! ```
//!
//! One statement per line, whitespace-separated tokens, UTF-8 with LF line
//! endings. Components, faces and orders are always derived, never stored.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::diagram::{Arc, Diagram, Node, NodeKind};
use crate::error::{Error, Result};

pub const TOOL: &str = "sgd";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn parse(text: &str) -> Result<Diagram> {
    let mut nodes = Vec::new();
    let mut arcs = Vec::new();
    // first line on which each id / half-edge label appears
    let mut id_line: HashMap<String, usize> = HashMap::new();
    let mut dup: Option<(usize, String)> = None;
    let mut label_line: HashMap<String, usize> = HashMap::new();

    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        let syntax = |message: String| Error::Syntax { line, message };
        let keyword = toks[0];
        if !matches!(keyword, "vertex" | "crossing" | "arc") {
            return Err(syntax(format!("unknown statement `{keyword}`")));
        }
        if toks.len() < 2 || toks[1] == ":" {
            return Err(syntax(format!("`{keyword}` needs an id")));
        }
        if toks.len() < 3 || toks[2] != ":" {
            return Err(syntax("expected `:` after the id".to_string()));
        }
        let id = toks[1].to_string();
        let labels: Vec<String> = toks[3..].iter().map(|s| s.to_string()).collect();
        if let Some(bad) = labels.iter().find(|l| l.as_str() == ":") {
            return Err(syntax(format!("unexpected `{bad}`")));
        }
        if id_line.contains_key(&id) && dup.is_none() {
            dup = Some((line, id.clone()));
        }
        id_line.entry(id.clone()).or_insert(line);
        for l in &labels {
            label_line.entry(l.clone()).or_insert(line);
        }
        match keyword {
            "vertex" => {
                if labels.is_empty() {
                    return Err(syntax(format!("vertex `{id}` needs at least one half-edge")));
                }
                nodes.push(Node::vertex(id, labels));
            }
            "crossing" => {
                if labels.len() != 4 {
                    return Err(Error::AtLine {
                        line,
                        inner: Box::new(Error::MalformedCrossing { id, slots: labels.len() }),
                    });
                }
                nodes.push(Node::crossing(id, labels, true));
            }
            _ => {
                if labels.len() != 2 {
                    return Err(syntax(format!("arc `{id}` needs exactly two half-edges")));
                }
                arcs.push(Arc::new(id, labels[0].clone(), labels[1].clone()));
            }
        }
    }
    if let Some((line, id)) = dup {
        return Err(Error::AtLine { line, inner: Box::new(Error::DuplicateId(id)) });
    }
    Diagram::new(nodes, arcs).map_err(|e| {
        let line = match &e {
            Error::DanglingHalfEdge(l) => label_line.get(l).copied(),
            Error::MalformedCrossing { id, .. } | Error::EmptyVertex(id) | Error::DegenerateArc(id) => {
                id_line.get(id).copied()
            }
            Error::DuplicateId(id) => id_line.get(id).copied(),
            _ => None,
        };
        match line {
            Some(line) => Error::AtLine { line, inner: Box::new(e) },
            None => e,
        }
    })
}

/// Canonical text: nodes then arcs, each sorted by id.
pub fn serialize(d: &Diagram) -> String {
    let mut out = String::new();
    for n in d.nodes() {
        match n.kind {
            NodeKind::Vertex => {
                out.push_str(&format!("vertex {} : {}\n", n.id, n.slots.join(" ")));
            }
            NodeKind::Crossing { over02 } => {
                let r = if over02 { 0 } else { 1 };
                let slots: Vec<&str> = (0..4).map(|i| n.slots[(i + r) % 4].as_str()).collect();
                out.push_str(&format!("crossing {} : {}\n", n.id, slots.join(" ")));
            }
        }
    }
    for a in d.arcs() {
        out.push_str(&format!("arc {} : {} {}\n", a.id, a.ends[0], a.ends[1]));
    }
    out
}

/// Wraps a result record in the report envelope; keys come out sorted.
pub fn report_json(command: &str, input: &str, result: Value) -> String {
    let v = json!({
        "tool": TOOL,
        "version": VERSION,
        "command": command,
        "input": input,
        "result": result,
    });
    serde_json::to_string_pretty(&v).expect("json values always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document_is_an_unknot() {
        let d = parse("vertex v1 : h1 h2\narc a1 : h1 h2").unwrap();
        assert_eq!(d.nodes().len(), 1);
        assert_eq!(d.faces().len(), 2);
        assert_eq!(serialize(&d), "vertex v1 : h1 h2\narc a1 : h1 h2\n");
    }

    #[test]
    fn three_slot_crossing_is_malformed() {
        let e = parse("crossing x1 : h1 h2 h3").unwrap_err();
        assert!(matches!(e.root(), Error::MalformedCrossing { slots: 3, .. }));
        assert_eq!(e.line(), Some(1));
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let e = parse("vertex v1 : h1 h2\nedge a1 : h1 h2").unwrap_err();
        assert_eq!(e.line(), Some(2));
        let e = parse("vertex v1 h1 h2\narc a1 : h1 h2").unwrap_err();
        assert_eq!(e.line(), Some(1));
        let e = parse("vertex v1 : h1 h2\narc a1 : h1").unwrap_err();
        assert_eq!(e.line(), Some(2));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let d = parse("# unknot\n\nvertex v1 : h1 h2  # marker\narc a1 : h1 h2\n").unwrap();
        assert_eq!(d.arcs().len(), 1);
    }

    #[test]
    fn under_crossing_serializes_rotated() {
        let text = "crossing x1 : a b c d\ncrossing x2 : e f g h\narc p : a h\narc q : b g\narc r : c f\narc s : d e\n";
        let d = parse(text).unwrap();
        let x = d.crossing_index("x1").unwrap();
        let flipped = d.with_toggled([x]);
        let back = parse(&serialize(&flipped)).unwrap();
        assert!(back.same_as(&flipped));
        assert!(!back.same_as(&d));
    }

    #[test]
    fn report_envelope_has_sorted_keys() {
        let s = report_json("validate", "-", json!({"ok": true}));
        let keys: Vec<usize> = ["command", "input", "result", "tool", "version"].iter().map(|k| s.find(k).unwrap()).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }
}
