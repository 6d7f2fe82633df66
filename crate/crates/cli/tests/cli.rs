use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

fn corpus(name: &str) -> String {
    format!("{}/../../corpus/{name}.sgd", env!("CARGO_MANIFEST_DIR"))
}

fn sgd(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sgd")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v, String::from_utf8(out.stderr).unwrap())
}

#[test]
fn hopf_is_not_splittable() {
    let (code, v, _) = sgd(&["decide", "--question", "splittable", &corpus("hopf")]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["reason"], "eulerian-improper");
    assert_eq!(v["tool"], "sgd");
    assert_eq!(v["command"], "decide");
}

#[test]
fn trefoil_single_change_is_solvable() {
    let (code, v, _) = sgd(&["solve", "--change", "x1", &corpus("trefoil")]);
    assert_eq!(code, 0);
    let regions: Vec<String> = v["result"]["regions"].as_array().unwrap().iter().map(|r| r.as_str().unwrap().to_string()).collect();
    let (code, v, _) = sgd(&["apply", "--regions", &regions.join(","), &corpus("trefoil")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["changed"], serde_json::json!(["x1"]));
}

#[test]
fn hopf_single_change_is_unsat() {
    let (code, v, _) = sgd(&["solve", "--change", "x1", &corpus("hopf")]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["certificate"], serde_json::json!(["x1", "x2"]));
}

#[test]
fn broken_input_reports_its_line() {
    let dir = std::env::temp_dir().join(format!("sgd-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("broken.sgd");
    std::fs::write(&p, "vertex v1 : h1 h2\nedge a1 : h1 h2\n").unwrap();
    let (code, v, err) = sgd(&["validate", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["line"], 2);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sgd"))
        .args(["validate", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(std::fs::read(corpus("trefoil")).unwrap().as_slice()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["crossings"], 3);
    assert_eq!(v["result"]["faces"], 5);
}

#[test]
fn nonplanar_unknottable_is_an_input_error() {
    let (code, v, _) = sgd(&["decide", "--question", "unknottable", &corpus("nonplanar_k5")]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["error"], "non-planar-graph");
    let (code, _, _) = sgd(&["decide", "--question", "splittable", &corpus("nonplanar_k5")]);
    assert_eq!(code, 0);
}

#[test]
fn witness_plans_replay_through_apply() {
    let dir = std::env::temp_dir().join(format!("sgd-cli-plan-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (name, q) in [("t24", "splittable"), ("trefoil", "unknottable"), ("theta0", "unknottable")] {
        let out = Command::new(env!("CARGO_BIN_EXE_sgd")).args(["witness", "--question", q, &corpus(name)]).output().unwrap();
        assert!(out.status.success(), "{name}");
        let p = dir.join(format!("{name}.json"));
        std::fs::write(&p, &out.stdout).unwrap();
        let (code, v, _) = sgd(&["apply", "--plan", p.to_str().unwrap(), &corpus(name)]);
        assert_eq!(code, 0, "{name}: {v}");
        assert_eq!(v["result"]["verification"]["pass"], true);
    }
    let (code, v, _) = sgd(&["witness", "--question", "splittable", &corpus("linked_triangles")]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["outcome"], "impossible");
}

#[test]
fn transforms_emit_diagrams() {
    let (code, v, _) = sgd(&["spur", "--crossing", "x1", &corpus("handcuff0")]);
    assert_eq!(code, 0);
    assert!(v["result"]["diagram"].as_str().unwrap().contains("crossing"));
    assert!(v["result"]["record"]["regions"].is_array());
    let (code, v, _) = sgd(&["split-vertices", "--component", "K1", &corpus("linked_triangles")]);
    assert_eq!(code, 0);
    assert!(v["result"]["faces"].is_object());
    let (code, v, _) = sgd(&["split-vertices", "--component", "K1", &corpus("theta0")]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["error"], "not-eulerian");
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        vec!["invariants", "t24"],
        vec!["faces", "reduc1"],
        vec!["witness", "--question", "splittable", "handcuff0"],
        vec!["oracle", "--count", "2", "--profile", "link(2)", "--seed", "5"],
    ] {
        let mut a: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        if a[0] != "oracle" {
            let last = a.pop().unwrap();
            a.push(corpus(&last));
        }
        let run = || Command::new(env!("CARGO_BIN_EXE_sgd")).args(&a).output().unwrap().stdout;
        assert_eq!(run(), run(), "{args:?}");
    }
}

#[test]
fn human_output_is_a_table() {
    let out = Command::new(env!("CARGO_BIN_EXE_sgd")).args(["--human", "invariants", &corpus("hopf")]).output().unwrap();
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.lines().any(|l| l.starts_with("proper") && l.ends_with("false")), "{s}");
}

#[test]
fn oracle_passes_on_the_corpus() {
    let (code, v, _) = sgd(&["oracle", "--max-faces", "12"]);
    assert_eq!(code, 0, "{}", v["result"]["diagrams"]);
    assert_eq!(v["result"]["failed"], 0);
}
