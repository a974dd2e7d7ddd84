use std::fs;
use std::path::{Path, PathBuf};

use holeforge::c5::{audit_c5, build_c5_partition, classify_atom_with_c5, C5Outcome};
use holeforge::c7::{audit_c7, build_c7_partition, c7_uniform_sets};
use holeforge::color::{exact_chromatic, max_clique, Coloring};
use holeforge::cwd::{add_back_vertices, build_from_near_uniform, evaluate, CwdExpression};
use holeforge::decomp::decompose;
use holeforge::detect::{class_report, ClassReport};
use holeforge::dimacs::{parse_dimacs, write_dimacs};
use holeforge::generate::{enumerate_small, random_in_class, Require};
use holeforge::graph::induced_subgraph;
use holeforge::hole::{find_hole, HoleEmbedding};
use holeforge::pipeline::{color_in_class, PipelineError};
use holeforge::uniform::{NamedSet, NearUniformPartition};
use holeforge::{Graph, VertexSet};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::{Command, HoleKind, Mode};

pub const OK: u8 = 0;
pub const FAILURE: u8 = 1;
pub const USAGE: u8 = 2;
pub const OUT_OF_CLASS: u8 = 3;
pub const VIOLATION: u8 = 4;

/// What one unit of work prints, plus an optional side-file line.
#[derive(Debug, Default)]
struct Output {
    stdout: String,
    stderr: String,
    side: Option<String>,
    code: u8,
}

impl Output {
    fn json(file: &str, body: Value, code: u8) -> Output {
        let mut obj = serde_json::Map::new();
        obj.insert("schema".into(), json!(1));
        obj.insert("file".into(), json!(file));
        if let Value::Object(m) = body {
            obj.extend(m);
        }
        Output { stdout: format!("{}\n", Value::Object(obj)), code, ..Output::default() }
    }

    fn with_stderr(mut self, msg: String) -> Output {
        self.stderr.push_str(&msg);
        self
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

pub fn run(cmd: Command) -> u8 {
    let (outputs, side_path) = match cmd {
        Command::Classify { files } => (per_file(&files, classify), None),
        Command::Partition { hole, index, files } => (per_file(&files, |g, f| partition(g, f, hole, index)), None),
        Command::Audit { hole, index, files } => (per_file(&files, |g, f| audit(g, f, hole, index)), None),
        Command::CwdBuild { index, out, files } => {
            if out.is_some() && files.len() != 1 {
                eprintln!("--out takes exactly one input file");
                return USAGE;
            }
            (per_file(&files, |g, f| cwd_build(g, f, index)), out)
        }
        Command::Decompose { files } => (per_file(&files, decomposition), None),
        Command::Color { mode, trace, files } => (per_file(&files, |g, f| color(g, f, mode)), trace),
        Command::Generate { n, seed, require, count, out } => return generate(n, seed, require, count, out.as_deref()),
        Command::Enumerate { n, labelled, out } => return enumerate(n.into(), labelled, out.as_deref()),
    };
    let mut code = OK;
    let mut side = String::new();
    for o in &outputs {
        print!("{}", o.stdout);
        eprint!("{}", o.stderr);
        if let Some(s) = &o.side {
            side.push_str(s);
        }
        code = code.max(o.code);
    }
    if let Some(path) = side_path {
        if let Err(e) = fs::write(&path, side) {
            eprintln!("{}: {e}", path.display());
            code = code.max(FAILURE);
        }
    }
    code
}

/// Runs `f` on every file concurrently; results keep input order.
fn per_file(files: &[PathBuf], f: impl Fn(&Graph, &str) -> Output + Sync) -> Vec<Output> {
    files
        .par_iter()
        .map(|path| {
            let name = path.display().to_string();
            match read_graph(path) {
                Ok(g) => f(&g, &name),
                Err(msg) => Output { stderr: format!("{name}: {msg}\n"), code: USAGE, ..Output::default() },
            }
        })
        .collect()
}

fn read_graph(path: &Path) -> Result<Graph, String> {
    let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
    parse_dimacs(&text).map_err(|e| e.to_string())
}

fn out_of_class(file: &str, report: &ClassReport) -> Output {
    Output::json(
        file,
        json!({ "error": "input is not (4K1, C4, C6)-free", "witnesses": to_value(&report.witnesses) }),
        OUT_OF_CLASS,
    )
}

fn no_hole(file: &str, hole: HoleKind, index: usize) -> Output {
    Output::json(file, json!({ "error": format!("no induced C{} with index {index}", hole.length()) }), OUT_OF_CLASS)
}

/// A claim failed on an in-class graph; the graph itself goes to stderr.
fn violation(file: &str, g: &Graph, body: Value) -> Output {
    Output::json(file, body, VIOLATION)
        .with_stderr(format!("{file}: structure violation; counterexample follows\n{}", write_dimacs(g)))
}

fn classify(g: &Graph, file: &str) -> Output {
    let mut body = to_value(&class_report(g));
    body["n"] = json!(g.n());
    body["m"] = json!(g.m());
    Output::json(file, body, OK)
}

fn partition(g: &Graph, file: &str, kind: HoleKind, index: usize) -> Output {
    let report = class_report(g);
    if !report.member {
        return out_of_class(file, &report);
    }
    let Some(hole) = find_hole(g, kind.length(), index).expect("length is 5 or 7") else {
        return no_hole(file, kind, index);
    };
    let built = match kind {
        HoleKind::C7 => build_c7_partition(g, &hole).map_err(|e| e.to_string()).and_then(|p| {
            let uniform = c7_uniform_sets(g, &hole).map_err(|e| e.to_string())?;
            Ok(json!({ "partition": to_value(&p), "uniform": to_value(&uniform) }))
        }),
        HoleKind::C5 => build_c5_partition(g, &hole).map(|p| json!({ "partition": to_value(&p) })).map_err(|e| e.to_string()),
    };
    match built {
        Ok(body) => Output::json(file, body, OK),
        Err(e) => violation(file, g, json!({ "error": e, "hole": to_value(&hole) })),
    }
}

fn audit(g: &Graph, file: &str, kind: HoleKind, index: usize) -> Output {
    let Some(hole) = find_hole(g, kind.length(), index).expect("length is 5 or 7") else {
        return no_hole(file, kind, index);
    };
    let report = class_report(g);
    let failed = |body: Value| {
        if report.member {
            violation(file, g, body)
        } else {
            Output::json(file, body, OUT_OF_CLASS)
        }
    };
    let audit = match kind {
        HoleKind::C7 => build_c7_partition(g, &hole).map(|p| audit_c7(g, &p)).map_err(|e| e.to_string()),
        HoleKind::C5 => build_c5_partition(g, &hole).map(|p| audit_c5(g, &p)).map_err(|e| e.to_string()),
    };
    match audit {
        Ok(a) => {
            let body = json!({ "member": report.member, "passed": a.passed(), "audit": to_value(&a) });
            if a.passed() {
                Output::json(file, body, OK)
            } else {
                failed(body)
            }
        }
        Err(e) => failed(json!({ "member": report.member, "passed": false, "error": e })),
    }
}

/// The certificate used for the expression, most specific first.
fn construction(g: &Graph, report: &ClassReport, index: usize) -> Result<(&'static str, CwdExpression), String> {
    if report.c7_present {
        let hole = find_hole(g, 7, index).expect("length is 7").ok_or(format!("no induced C7 with index {index}"))?;
        let p = c7_uniform_sets(g, &hole).map_err(|e| e.to_string())?;
        let e = build_from_near_uniform(g, &p).map_err(|e| e.to_string())?;
        return Ok(("c7-uniform", e));
    }
    if report.c5_present && !report.c5twin_present && g.is_connected() {
        match classify_atom_with_c5(g) {
            Ok(C5Outcome::NearUniformConstruction { removed, partition, .. }) => {
                let e = build_from_near_uniform(g, &partition).map_err(|e| e.to_string())?;
                let e = add_back_vertices(&e, g, &removed).map_err(|e| e.to_string())?;
                return Ok(("case-iii", e));
            }
            Ok(C5Outcome::JoinCliqueC5 { clique, hole }) => {
                return Ok(("case-iv", join_expression(g, &clique, &hole)?));
            }
            Ok(_) => {}
            Err(e) => return Err(e.to_string()),
        }
    }
    let singles = g
        .vertices()
        .map(|v| NamedSet { name: format!("v{}", v + 1), vertices: VertexSet::singleton(v) })
        .collect();
    let p = NearUniformPartition::new(g, singles).map_err(|e| e.to_string())?;
    Ok(("singletons", build_from_near_uniform(g, &p).map_err(|e| e.to_string())?))
}

fn join_expression(g: &Graph, clique: &VertexSet, hole: &HoleEmbedding) -> Result<CwdExpression, String> {
    let mut sets = vec![NamedSet { name: "K".into(), vertices: clique.clone() }];
    sets.extend(
        (0..5).map(|i| NamedSet { name: format!("H{}", i + 1), vertices: VertexSet::singleton(hole.at(i)) }),
    );
    let p = NearUniformPartition::new(g, sets).map_err(|e| e.to_string())?;
    build_from_near_uniform(g, &p).map_err(|e| e.to_string())
}

fn cwd_build(g: &Graph, file: &str, index: usize) -> Output {
    if g.n() == 0 {
        return Output::json(file, json!({ "error": "empty graph has no expression" }), USAGE);
    }
    let report = class_report(g);
    if !report.member {
        return out_of_class(file, &report);
    }
    if report.c7_present && find_hole(g, 7, index).expect("length is 7").is_none() {
        return no_hole(file, HoleKind::C7, index);
    }
    match construction(g, &report, index) {
        Ok((how, e)) => {
            let round_trip = evaluate(&e).map(|lg| lg.equals(g)).unwrap_or(false);
            let text = e.to_text();
            let body = json!({
                "construction": how,
                "width": e.width(),
                "round_trip": round_trip,
                "expression": text,
            });
            let mut out = if round_trip { Output::json(file, body, OK) } else { violation(file, g, body) };
            out.side = Some(text);
            out
        }
        Err(e) => violation(file, g, json!({ "error": e })),
    }
}

fn decomposition(g: &Graph, file: &str) -> Output {
    let tree = decompose(g);
    Output::json(file, json!({ "atoms": tree.atom_count(), "tree": to_value(&tree) }), OK)
}

fn solution(file: &str, c: &Coloring) -> String {
    format!("c {file}\nc colors {}\n{}", c.count(), c.to_solution_lines())
}

fn color(g: &Graph, file: &str, mode: Mode) -> Output {
    let omega = max_clique(g).size;
    let (c, trace) = match mode {
        Mode::Exact => (exact_chromatic(g).1, Value::Null),
        Mode::Pipeline => {
            let report = class_report(g);
            if !report.member {
                return out_of_class(file, &report);
            }
            match color_in_class(g) {
                Ok((c, t)) => (c, to_value(&t)),
                Err(PipelineError::StructureViolation { atom, reason }) => {
                    let sub = induced_subgraph(g, &atom).expect("atom lies in graph").graph;
                    return violation(file, &sub, json!({ "error": reason, "atom": to_value(&atom) }));
                }
                Err(e) => return violation(file, g, json!({ "error": e.to_string() })),
            }
        }
    };
    let mode = match mode {
        Mode::Exact => "exact",
        Mode::Pipeline => "pipeline",
    };
    let mut side = serde_json::Map::new();
    side.insert("schema".into(), json!(1));
    side.insert("file".into(), json!(file));
    side.insert("mode".into(), json!(mode));
    side.insert("colors".into(), json!(c.count()));
    side.insert("clique_number".into(), json!(omega));
    if !trace.is_null() {
        side.insert("trace".into(), trace);
    }
    Output { stdout: solution(file, &c), side: Some(format!("{}\n", Value::Object(side))), ..Output::default() }
}

fn write_or_print(out: Option<&Path>, name: &str, text: &str) -> Result<String, String> {
    match out {
        Some(dir) => {
            let path = dir.join(name);
            fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?;
            Ok(String::new())
        }
        None => Ok(text.to_string()),
    }
}

fn generate(n: usize, seed: u64, require: Option<HoleKind>, count: usize, out: Option<&Path>) -> u8 {
    if let Some(dir) = out {
        if let Err(e) = fs::create_dir_all(dir) {
            eprintln!("{}: {e}", dir.display());
            return FAILURE;
        }
    }
    let require = require.map(|h| match h {
        HoleKind::C5 => Require::C5,
        HoleKind::C7 => Require::C7,
    });
    let results: Vec<Result<String, String>> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let s = seed.wrapping_add(i);
            let g = random_in_class(n, s, require).ok_or(format!("seed {s}: no graph found"))?;
            let text = format!("c holeforge generate n {n} seed {s}\n{}", write_dimacs(&g));
            write_or_print(out, &format!("g{s}.col"), &text)
        })
        .collect();
    emit(results)
}

fn enumerate(n: usize, labelled: bool, out: Option<&Path>) -> u8 {
    let graphs = match enumerate_small(n, !labelled) {
        Ok(gs) => gs,
        Err(e) => {
            eprintln!("{e}");
            return USAGE;
        }
    };
    if let Some(dir) = out {
        if let Err(e) = fs::create_dir_all(dir) {
            eprintln!("{}: {e}", dir.display());
            return FAILURE;
        }
    }
    eprintln!("{} graphs", graphs.len());
    let results = graphs
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let text = format!("c holeforge enumerate n {n} graph {}\n{}", i + 1, write_dimacs(g));
            write_or_print(out, &format!("n{n}_{:05}.col", i + 1), &text)
        })
        .collect();
    emit(results)
}

fn emit(results: Vec<Result<String, String>>) -> u8 {
    let mut code = OK;
    for r in results {
        match r {
            Ok(text) => print!("{text}"),
            Err(e) => {
                eprintln!("{e}");
                code = FAILURE;
            }
        }
    }
    code
}
