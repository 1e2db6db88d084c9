use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const SMALL_PROGRAM: &str = "x :- not y.\n:- x, not y.\n";
const THREE_EXPR: &str =
    "eta(n,3,2, oplus( rho(3,2, eta(p,1,3, oplus( eta(h,1,2, oplus(a(1,x), r(2,r1)) ), r(3,r2)) )), a(3,y) ))";

fn cwasp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cwasp")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_classical_on_the_example() {
    let dir = TempDir::new().unwrap();
    let (p, e) = (file(&dir, "p.lp", SMALL_PROGRAM), file(&dir, "e.cwd", THREE_EXPR));
    let trace = dir.path().join("trace.json");
    let out = cwasp(&["solve", "--mode", "classical", "--program", s(&p), "--expr", s(&e), "--trace", s(&trace)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["decision"], true);
    assert_eq!(v["width"], 3);
    assert_eq!(v["table_sizes"].as_array().unwrap().len(), 11);
    let trace: Value = serde_json::from_str(&fs::read_to_string(trace).unwrap()).unwrap();
    assert_eq!(trace[10]["node"], "eta(n,3,2)");
    assert_eq!(trace[10]["table"].as_array().unwrap().len(), 4);
}

#[test]
fn solve_asp_without_answer_set() {
    let dir = TempDir::new().unwrap();
    let (p, e) = (file(&dir, "p.lp", ":- not x.\n"), file(&dir, "e.cwd", "eta(n,1,2,oplus(a(1,x),r(2,r1)))"));
    let out = cwasp(&["solve", "--mode", "asp", "--program", s(&p), "--expr", s(&e)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["decision"], false);
}

#[test]
fn validate_reports_a_mismatch() {
    let dir = TempDir::new().unwrap();
    let (p, e) = (file(&dir, "p.lp", SMALL_PROGRAM), file(&dir, "e.cwd", "oplus(a(1,x),r(2,r1))"));
    let out = cwasp(&["validate", "--program", s(&p), "--expr", s(&e)]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["status"], "mismatch");
    assert_eq!(v["report"]["missing_vertices"].as_array().unwrap().len(), 2);

    let good = file(&dir, "good.cwd", THREE_EXPR);
    let out = cwasp(&["validate", "--program", s(&p), "--expr", s(&good)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "ok");
}

#[test]
fn solve_refuses_a_mismatched_expression() {
    let dir = TempDir::new().unwrap();
    let (p, e) = (file(&dir, "p.lp", SMALL_PROGRAM), file(&dir, "e.cwd", "eta(h,1,2,oplus(a(1,x),r(2,r1)))"));
    let out = cwasp(&["solve", "--mode", "classical", "--program", s(&p), "--expr", s(&e)]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["status"], "mismatch");
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(cwasp(&["solve", "--mode", "classical"]).status.code(), Some(2));
    assert_eq!(cwasp(&["frobnicate"]).status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.lp", "a :- not a.\n");
    let out = cwasp(&["oracle", "--mode", "models", "--program", s(&bad)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("normalization"));
    let missing = dir.path().join("nope.lp");
    assert_eq!(cwasp(&["oracle", "--mode", "models", "--program", s(&missing)]).status.code(), Some(3));
}

#[test]
fn oracle_lists_answer_sets() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "p.lp", "a :- not b.\nb :- not a.\n");
    let out = cwasp(&["oracle", "--mode", "answersets", "--program", s(&p)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["sets"], serde_json::json!([["a"], ["b"]]));
}

#[test]
fn auto_expression_agrees_with_the_oracle() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("p.lp");
    let out = cwasp(&["gen", "random-program", "--atoms", "6", "--rules", "5", "--seed", "4", "--out", s(&p)]);
    assert_eq!(out.status.code(), Some(0));
    let oracle = json(&cwasp(&["oracle", "--mode", "answersets", "--program", s(&p)]));
    for construction in ["trivial", "heuristic"] {
        let v = json(&cwasp(&["solve", "--mode", "asp", "--program", s(&p), "--auto-expr", construction]));
        assert_eq!(v["decision"], oracle["count"].as_u64().unwrap() > 0);
    }
}

#[test]
fn qbf_pipeline() {
    let dir = TempDir::new().unwrap();
    let q = file(&dir, "f.qbf", "exists x1 x2\nforall y1 y2\nterm x1 -y2\nterm -x2 y2\n");
    let p = dir.path().join("p.lp");
    let out = cwasp(&["gen", "qbf2asp", "--qbf", s(&q), "--out", s(&p)]);
    assert_eq!(out.status.code(), Some(0));
    let e = dir.path().join("e.cwd");
    assert_eq!(cwasp(&["expr", "heuristic", "--program", s(&p), "--out", s(&e)]).status.code(), Some(0));
    let solved = json(&cwasp(&["solve", "--mode", "asp", "--program", s(&p), "--expr", s(&e)]));
    let oracle = json(&cwasp(&["oracle", "--mode", "answersets", "--program", s(&p)]));
    assert_eq!(solved["decision"], oracle["count"].as_u64().unwrap() > 0);
    let ucr = json(&cwasp(&["measure", "uncyclerank", "--program", s(&p)]));
    assert!(ucr["value"].as_u64().unwrap() <= 2);
    let hom = json(&cwasp(&["measure", "homogeneous", "--program", s(&p)]));
    assert!(hom["max_cycle_rank"].as_u64().unwrap() <= 1);
}

#[test]
fn pclique_pipeline() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "g.json", r#"{"parts":[["a1","a2"],["b1","b2"]],"edges":[["a1","b2"]]}"#);
    let (p, e) = (dir.path().join("p.lp"), dir.path().join("e.cwd"));
    let out = cwasp(&["gen", "pclique", "--graph", s(&g), "--out", s(&p), "--expr-out", s(&e)]);
    assert_eq!(out.status.code(), Some(0));
    let joined = dir.path().join("j.cwd");
    assert_eq!(cwasp(&["expr", "join", "--expr", s(&e), "--signs", "p,n", "--out", s(&joined)]).status.code(), Some(0));
    let oracle = json(&cwasp(&["oracle", "--mode", "answersets", "--program", s(&p)]));
    assert_eq!(oracle["sets"], serde_json::json!([["a1", "b2"]]));
    let graph = json(&cwasp(&["graph", "sinc", "--program", s(&p), "--join", "p,n"]));
    assert!(graph["edges"].as_array().unwrap().iter().all(|e| e[2] != "p" && e[2] != "n"));
}

#[test]
fn graph_exports() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "p.lp", SMALL_PROGRAM);
    let dep = json(&cwasp(&["graph", "dep", "--program", s(&p)]));
    assert_eq!(dep["arcs"], serde_json::json!([[0, 1]]));
    let dot = json(&cwasp(&["graph", "sinc", "--program", s(&p), "--format", "dot"]));
    assert!(dot["dot"].as_str().unwrap().starts_with("graph G {"));
    assert_eq!(cwasp(&["graph", "dep", "--program", s(&p), "--join", "h"]).status.code(), Some(3));
}

#[test]
fn grid_and_random_qbf() {
    let v = json(&cwasp(&["gen", "grid", "--n", "3"]));
    assert_eq!((v["atoms"].as_u64(), v["rules"].as_u64()), (Some(9), Some(9)));
    let q = json(&cwasp(&["gen", "random-qbf", "--exists", "2", "--forall", "2", "--terms", "3", "--seed", "1"]));
    assert!(q["qbf"].as_str().unwrap().starts_with("exists x1 x2\nforall y1 y2\n"));
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "p.lp", "a | b :- not c.\nc :- a, b.\n:- not a, not b.\n");
    for args in [
        vec!["solve", "--mode", "asp", "--program", s(&p), "--auto-expr", "heuristic"],
        vec!["measure", "homogeneous", "--program", s(&p)],
        vec!["graph", "sinc", "--program", s(&p)],
        vec!["expr", "heuristic", "--program", s(&p)],
    ] {
        assert_eq!(cwasp(&args).stdout, cwasp(&args).stdout);
    }
}
