use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use holeforge::cwd::{evaluate, CwdExpression};
use holeforge::detect::class_report;
use holeforge::dimacs::parse_dimacs;
use serde_json::Value;
use tempfile::TempDir;

const C7: &str = "p edge 7 7\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 6 7\ne 7 1\n";
const C8: &str = "p edge 8 8\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 6 7\ne 7 8\ne 8 1\n";
/// C7 plus a vertex adjacent to 1, 2 and 3.
const C7_X1: &str = "p edge 8 10\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 6 7\ne 7 1\ne 8 1\ne 8 2\ne 8 3\n";
/// C7 plus a pendant vertex on 1, which creates a 4K1.
const C7_PENDANT: &str = "p edge 8 8\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 6 7\ne 7 1\ne 8 1\n";

fn holeforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holeforge")).args(args).env_remove("HOLEFORGE_SEED").output().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn pipeline_colors_c7_with_three_colors() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c7.col", C7);
    let o = holeforge(&["color", "--mode", "pipeline", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("c colors 3\n"));
    let colors: Vec<(usize, usize)> = text
        .lines()
        .filter_map(|l| l.strip_prefix("s "))
        .map(|l| {
            let (v, c) = l.split_once(' ').unwrap();
            (v.parse().unwrap(), c.parse().unwrap())
        })
        .collect();
    assert_eq!(colors.len(), 7);
    let of = |v: usize| colors.iter().find(|x| x.0 == v).unwrap().1;
    for v in 1..=7 {
        assert_ne!(of(v), of(v % 7 + 1));
    }
}

#[test]
fn audit_passes_on_c7_with_x1() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "x1.col", C7_X1);
    let o = holeforge(&["audit", "--hole", "c7", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_eq!(v["schema"], 1);
    assert_eq!(v["passed"], true);
}

#[test]
fn classify_reports_4k1_in_c8() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c8.col", C8);
    let o = holeforge(&["classify", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_eq!(v["member"], false);
    assert_eq!(v["witnesses"]["four_k1"]["vertices"], serde_json::json!([1, 3, 5, 7]));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.col", "p edge 2 1\ne 1 1\n");
    let c8 = write(&dir, "c8.col", C8);
    let c7 = write(&dir, "c7.col", C7);
    let pendant = write(&dir, "pendant.col", C7_PENDANT);
    assert_eq!(holeforge(&["classify", s(&bad)]).status.code(), Some(2));
    assert_eq!(holeforge(&["classify", "/nonexistent/file.col"]).status.code(), Some(2));
    assert_eq!(holeforge(&["bogus"]).status.code(), Some(2));
    assert_eq!(holeforge(&["enumerate", "--n", "8"]).status.code(), Some(2));
    assert_eq!(holeforge(&["color", s(&c8)]).status.code(), Some(3));
    assert_eq!(holeforge(&["color", "--mode", "exact", s(&c8)]).status.code(), Some(0));
    assert_eq!(holeforge(&["partition", "--hole", "c5", s(&c7)]).status.code(), Some(3));
    // the pendant vertex sees one hole vertex, which no set allows
    let o = holeforge(&["audit", "--hole", "c7", s(&pendant)]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json_lines(&o)[0]["passed"], false);
}

#[test]
fn multiple_files_keep_input_order() {
    let dir = TempDir::new().unwrap();
    let names = ["a.col", "b.col", "c.col", "d.col"];
    let texts = [C7, C8, C7_X1, C7];
    let paths: Vec<PathBuf> = names.iter().zip(texts).map(|(n, t)| write(&dir, n, t)).collect();
    let args: Vec<&str> = ["classify"].into_iter().chain(paths.iter().map(|p| s(p))).collect();
    let o = holeforge(&args);
    let files: Vec<String> = json_lines(&o).iter().map(|v| v["file"].as_str().unwrap().to_string()).collect();
    let expected: Vec<String> = paths.iter().map(|p| s(p).to_string()).collect();
    assert_eq!(files, expected);
}

#[test]
fn generate_is_reproducible() {
    let a = holeforge(&["generate", "--n", "10", "--seed", "42", "--require", "c7", "--count", "3"]);
    let b = holeforge(&["generate", "--n", "10", "--seed", "42", "--require", "c7", "--count", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_holeforge"))
        .args(["generate", "--n", "10", "--require", "c7", "--count", "3"])
        .env("HOLEFORGE_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
}

#[test]
fn generated_files_are_in_class() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("corpus");
    let o = holeforge(&["generate", "--n", "9", "--seed", "7", "--require", "c5", "--count", "4", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let mut files: Vec<_> = fs::read_dir(&out).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert_eq!(files.len(), 4);
    for f in &files {
        let g = parse_dimacs(&fs::read_to_string(f).unwrap()).unwrap();
        let r = class_report(&g);
        assert!(r.member && r.c5_present);
        assert_eq!(g.n(), 9);
    }
    let args: Vec<&str> = ["audit", "--hole", "c5"].into_iter().chain(files.iter().map(|p| s(p))).collect();
    assert_eq!(holeforge(&args).status.code(), Some(0));
}

#[test]
fn cwd_build_writes_an_expression() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "x1.col", C7_X1);
    let out = dir.path().join("x1.cwd");
    let o = holeforge(&["cwd-build", "--out", s(&out), s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_eq!(v["round_trip"], true);
    assert_eq!(v["construction"], "c7-uniform");
    let e = CwdExpression::parse(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["width"], e.width());
    assert!(evaluate(&e).unwrap().equals(&parse_dimacs(C7_X1).unwrap()));
}

#[test]
fn color_trace_and_decompose() {
    let dir = TempDir::new().unwrap();
    // C5 with a triangle on the edge 1-2: two atoms
    let f = write(&dir, "g.col", "p edge 6 7\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\ne 6 1\ne 6 2\n");
    let trace = dir.path().join("trace.jsonl");
    let o = holeforge(&["color", "--trace", s(&trace), s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    let t: Value = serde_json::from_str(fs::read_to_string(&trace).unwrap().trim()).unwrap();
    assert_eq!(t["schema"], 1);
    assert_eq!(t["colors"], 3);
    assert_eq!(t["trace"]["atoms"].as_array().unwrap().len(), 2);
    let d = holeforge(&["decompose", s(&f)]);
    assert_eq!(json_lines(&d)[0]["atoms"], 2);
}

#[test]
fn enumerate_small_graphs() {
    let o = holeforge(&["enumerate", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("p edge 4").count(), 9);
    let o = holeforge(&["enumerate", "--n", "4", "--labelled"]);
    assert_eq!(stdout(&o).matches("p edge 4").count(), 60);
}
