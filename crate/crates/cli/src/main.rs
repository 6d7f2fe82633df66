use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sgd_core::codec::{parse, report_json, serialize};
use sgd_core::decide::{decide, witness, Question, Witness, WitnessPlan};
use sgd_core::diagram::component_name;
use sgd_core::gf2::{crossings_by_id, incidence_matrix, min_weight, solve, solve_with_dont_care, SolveOutcome};
use sgd_core::invariants::{eulerian_check, eulerian_orientation, is_proper, linking_matrix, warping_matrix};
use sgd_core::oracle::{check_theorems, corpus_cases, generated_cases, verify_witness, Case, Profile};
use sgd_core::transform::{apply_crossing_changes, apply_region_set, knotify, shortest_spur_path, spur_insert};
use sgd_core::{CrossingKind, Diagram, Error};

/// Spatial-graph diagrams and region crossing changes.
#[derive(Parser)]
#[command(name = "sgd", version)]
struct Cli {
    /// Render a plain-text table instead of JSON.
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// SGD file, or `-` for standard input.
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and check a diagram.
    Validate(Input),
    /// List regions and crossings.
    Faces(Input),
    /// Eulerian flags, linking numbers, properness and warping degrees.
    Invariants(Input),
    /// Find regions realizing a set of crossing changes.
    Solve {
        #[arg(long, value_delimiter = ',', required = true)]
        change: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        care: Option<Vec<String>>,
        /// Return a lightest region set.
        #[arg(long)]
        min_weight: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Apply region and crossing changes, or replay a witness plan.
    Apply {
        #[arg(long, value_delimiter = ',')]
        regions: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        change: Vec<String>,
        /// Witness plan JSON (the `result` of `witness`, or the plan itself).
        #[arg(long, conflicts_with_all = ["regions", "change"])]
        plan: Option<String>,
        #[command(flatten)]
        input: Input,
    },
    /// Split the vertices of an Eulerian component down to a closed curve.
    SplitVertices {
        #[arg(long)]
        component: String,
        #[command(flatten)]
        input: Input,
    },
    /// Insert a spur from a crossing to an odd vertex.
    Spur {
        #[arg(long)]
        crossing: String,
        #[arg(long)]
        to: Option<String>,
        #[command(flatten)]
        input: Input,
    },
    /// Answer whether the diagram can be unknotted or completely split by region crossing changes
    Decide {
        #[arg(long)]
        question: Question,
        #[command(flatten)]
        input: Input,
    },
    /// Build a replayable plan of insertions and regions, or an impossibility certificate
    Witness {
        #[arg(long)]
        question: Question,
        #[command(flatten)]
        input: Input,
    },
    /// Check the decision procedures against brute force on the bundled
    /// diagrams (or the given one) and a generated batch.
    Oracle {
        #[arg(long, default_value_t = 12)]
        max_faces: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "knot")]
        profile: Profile,
        #[arg(long, default_value_t = 0)]
        count: usize,
        input: Option<String>,
    },
}

/// Result record plus exit code.
struct Outcome {
    result: Value,
    code: u8,
}

fn ok(result: Value) -> Outcome {
    Outcome { result, code: 0 }
}

fn read(path: &str) -> Result<Diagram, Error> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Unsupported(format!("reading standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Unsupported(format!("reading `{path}`: {e}")))?
    };
    parse(&text)
}

fn names(d: &Diagram, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| d.node(x).id.clone()).collect()
}

fn face_names(d: &Diagram, fs: &[usize]) -> Vec<String> {
    fs.iter().map(|&f| d.face(f).id.clone()).collect()
}

fn component(d: &Diagram, s: &str) -> Result<usize, Error> {
    let n = s.strip_prefix('K').unwrap_or(s).parse::<usize>().ok().filter(|&n| n >= 1);
    match n {
        Some(n) if n <= d.graph().component_count => Ok(n - 1),
        _ => Err(Error::UnknownComponent(s.to_string())),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("records serialize")
}

fn run(cmd: &Command) -> Result<Outcome, Error> {
    match cmd {
        Command::Validate(i) => {
            let d = read(&i.input)?;
            let g = d.graph();
            Ok(ok(json!({
                "valid": true,
                "crossings": d.crossings().len(),
                "vertices": g.vertices.len(),
                "arcs": d.arcs().len(),
                "faces": d.faces().len(),
                "components": g.component_count,
                "shadow_components": d.shadow_components(),
            })))
        }
        Command::Faces(i) => {
            let d = read(&i.input)?;
            let faces: Vec<Value> = d
                .faces()
                .iter()
                .map(|f| {
                    let corners: Vec<Value> = f.corners.iter().map(|c| json!([d.node(c.node).id, c.gap])).collect();
                    json!({"id": f.id, "crossings": names(&d, &f.crossings), "corners": corners})
                })
                .collect();
            let crossings: Vec<Value> = d
                .crossings()
                .into_iter()
                .map(|x| {
                    let c = d.classify(x);
                    let kind = match c.kind {
                        CrossingKind::SelfCrossing(k) => json!({"self": component_name(k)}),
                        CrossingKind::NonSelf(a, b) => json!({"between": [component_name(a), component_name(b)]}),
                    };
                    json!({"id": d.node(x).id, "kind": kind, "reducible": c.reducible})
                })
                .collect();
            Ok(ok(json!({"faces": faces, "crossings": crossings})))
        }
        Command::Invariants(i) => {
            let d = read(&i.input)?;
            let ec = eulerian_check(&d);
            let odd: Vec<Vec<String>> = ec.odd.iter().map(|o| names(&d, o)).collect();
            let mut r = json!({
                "components": (0..d.graph().component_count).map(component_name).collect::<Vec<_>>(),
                "eulerian": ec.eulerian,
                "eulerian_components": ec.per_component,
                "odd_vertices": odd,
                "warping": warping_matrix(&d).w,
            });
            if ec.eulerian {
                let lk = linking_matrix(&d, &eulerian_orientation(&d)?)?;
                let p = is_proper(&lk);
                r["linking"] = to_value(&lk.lk);
                r["proper"] = json!(p.proper);
                r["row_sums"] = to_value(&p.row_sums);
                r["odd_components"] = to_value(&p.odd_components.iter().map(|&c| component_name(c)).collect::<Vec<_>>());
            }
            Ok(ok(r))
        }
        Command::Solve { change, care, min_weight: minimize, input } => {
            let d = read(&input.input)?;
            let m = incidence_matrix(&d);
            let t = crossings_by_id(&d, change)?;
            let care = care.as_ref().map(|c| crossings_by_id(&d, c)).transpose()?;
            let out = match &care {
                Some(c) => solve_with_dont_care(&m, &t, c)?,
                None => solve(&m, &t)?,
            };
            match out {
                SolveOutcome::Sat { regions, .. } => {
                    let regions = if *minimize { min_weight(&m, &regions)? } else { regions };
                    let induced: Vec<usize> = match &care {
                        Some(c) => m.effect(&regions).into_iter().filter(|x| !c.contains(x)).collect(),
                        None => Vec::new(),
                    };
                    Ok(ok(json!({"sat": true, "regions": face_names(&d, &regions), "induced": names(&d, &induced)})))
                }
                SolveOutcome::Unsat { certificate } => Ok(Outcome { result: json!({"sat": false, "certificate": names(&d, &certificate)}), code: 1 }),
            }
        }
        Command::Apply { regions, change, plan, input } => {
            let d = read(&input.input)?;
            if let Some(p) = plan {
                let text = std::fs::read_to_string(p).map_err(|e| Error::Unsupported(format!("reading `{p}`: {e}")))?;
                let v: Value = serde_json::from_str(&text).map_err(|e| Error::Unsupported(format!("plan JSON: {e}")))?;
                let v = v.get("result").cloned().unwrap_or(v);
                let plan: WitnessPlan = match serde_json::from_value::<Witness>(v.clone()) {
                    Ok(Witness::Plan(p)) => p,
                    Ok(Witness::Impossible(_)) => return Err(Error::Unsupported("the witness is an impossibility certificate".into())),
                    Err(_) => serde_json::from_value(v).map_err(|e| Error::Unsupported(format!("plan JSON: {e}")))?,
                };
                let ver = verify_witness(&d, &plan)?;
                let code = if ver.pass { 0 } else { 1 };
                let result = apply_crossing_changes(&d, &ver.changed)?;
                return Ok(Outcome { result: json!({"verification": to_value(&ver), "diagram": serialize(&result)}), code });
            }
            let e = apply_region_set(&d, regions)?;
            let e = apply_crossing_changes(&e, change)?;
            Ok(ok(json!({"changed": e.crossing_diff(&d), "diagram": serialize(&e)})))
        }
        Command::SplitVertices { component: c, input } => {
            let d = read(&input.input)?;
            let (e, map) = knotify(&d, component(&d, c)?)?;
            let faces: serde_json::Map<String, Value> = map.iter().enumerate().map(|(f, &g)| (d.face(f).id.clone(), json!(e.face(g).id))).collect();
            Ok(ok(json!({"diagram": serialize(&e), "faces": faces})))
        }
        Command::Spur { crossing, to, input } => {
            let d = read(&input.input)?;
            let (path, v) = shortest_spur_path(&d, crossing, to.as_deref())?;
            let (e, rec) = spur_insert(&d, crossing, &path, &v)?;
            Ok(ok(json!({"diagram": serialize(&e), "record": to_value(&rec)})))
        }
        Command::Decide { question, input } => {
            let d = read(&input.input)?;
            let v = decide(&d, *question)?;
            Ok(Outcome { code: if v.answer { 0 } else { 1 }, result: to_value(&v) })
        }
        Command::Witness { question, input } => {
            let d = read(&input.input)?;
            let w = witness(&d, *question)?;
            Ok(Outcome { code: if w.plan().is_some() { 0 } else { 1 }, result: to_value(&w) })
        }
        Command::Oracle { max_faces, seed, profile, count, input } => {
            let mut cases: Vec<Case> = match input {
                Some(p) => vec![Case { name: p.clone(), diagram: read(p)?, expect_splittable: None }],
                None => corpus_cases(),
            };
            cases.extend(generated_cases(*seed, *profile, *count));
            let r = check_theorems(&cases, *max_faces, *seed);
            let code = if r.theorem_violations > 0 {
                3
            } else if r.ok() {
                0
            } else {
                1
            };
            Ok(Outcome { result: to_value(&r), code })
        }
    }
}

fn command_name(c: &Command) -> (&'static str, String) {
    match c {
        Command::Validate(i) => ("validate", i.input.clone()),
        Command::Faces(i) => ("faces", i.input.clone()),
        Command::Invariants(i) => ("invariants", i.input.clone()),
        Command::Solve { input, .. } => ("solve", input.input.clone()),
        Command::Apply { input, .. } => ("apply", input.input.clone()),
        Command::SplitVertices { input, .. } => ("split-vertices", input.input.clone()),
        Command::Spur { input, .. } => ("spur", input.input.clone()),
        Command::Decide { input, .. } => ("decide", input.input.clone()),
        Command::Witness { input, .. } => ("witness", input.input.clone()),
        Command::Oracle { input, .. } => ("oracle", input.clone().unwrap_or_else(|| "corpus".into())),
    }
}

/// Flattens a JSON value into `path  value` rows.
fn table(v: &Value, prefix: &str, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                table(x, &p, rows);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                table(x, &format!("{prefix}[{i}]"), rows);
            }
        }
        Value::Array(a) => rows.push((prefix.to_string(), a.iter().map(scalar).collect::<Vec<_>>().join(", "))),
        x => rows.push((prefix.to_string(), scalar(x))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        x => x.to_string(),
    }
}

fn render_human(v: &Value) -> String {
    let mut rows = Vec::new();
    table(v, "", &mut rows);
    let w = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, x) in rows {
        if x.contains('\n') {
            out.push_str(&format!("{k}:\n{x}"));
            if !x.ends_with('\n') {
                out.push('\n');
            }
        } else {
            out.push_str(&format!("{k:<w$}  {x}\n"));
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, input) = command_name(&cli.command);
    let (result, code) = match run(&cli.command) {
        Ok(o) => (o.result, o.code),
        Err(e) => {
            eprintln!("sgd {name}: {e}");
            let code = if matches!(e.root(), Error::TheoremViolation(_)) { 3 } else { 2 };
            let mut r = json!({"error": e.kind(), "message": e.to_string()});
            if let Some(l) = e.line() {
                r["line"] = json!(l);
            }
            (r, code)
        }
    };
    if cli.human {
        print!("{}", render_human(&result));
    } else {
        println!("{}", report_json(name, &input, result));
    }
    ExitCode::from(code)
}
