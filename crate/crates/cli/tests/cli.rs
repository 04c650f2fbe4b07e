use std::path::Path;
use std::process::{Command, Output};

use sdrw::cases::theories::ba_signature;
use sdrw::io::{read_cospan, TraceJson};
use sdrw::term::parse;
use tempfile::TempDir;

fn sdrw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdrw"))
        .args(args)
        .env_remove("SDRW_OUT_DIR")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

const G: &str = "(d + d) ; (id(1) + sym(1, 1) + id(1)) ; (m + m)";

#[test]
fn check_reports_ma_terms() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "fs3.term", "(d + id(1)) ; (id(1) + m)\n");
    let o = sdrw(&["check", &f]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("MA: yes"));
}

#[test]
fn check_rejects_merged_inputs() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "merged.json",
        r#"{"nodes": [{"id": 0, "colour": "•"}, {"id": 1, "colour": "•"}],
            "edges": [{"id": 0, "label": "m", "sources": [0, 0], "targets": [1]}],
            "inputs": [0, 0], "outputs": [1]}"#,
    );
    let o = sdrw(&["check", &f]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("MA: no (leg not mono)"));
}

#[test]
fn check_flags_inconsistent_labels() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "two.json",
        r#"{"nodes": [{"id": 0, "colour": "•"}, {"id": 1, "colour": "•"}, {"id": 2, "colour": "•"}],
            "edges": [{"id": 0, "label": "f", "sources": [0], "targets": [1]},
                      {"id": 1, "label": "f", "sources": [1], "targets": []}],
            "inputs": [0], "outputs": [2]}"#,
    );
    let o = sdrw(&["check", &f]);
    assert!(
        stdout(&o).contains("arity mismatch") || stdout(&o).contains("coarity mismatch"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn bad_input_exits_2() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&sdrw(&["check", &write(&dir, "bad.json", "{\"nodes\": [")])), 2);
    assert_eq!(code(&sdrw(&["check", &write(&dir, "bad.term", "m ; ; d")])), 2);
    assert_eq!(code(&sdrw(&["check", &path(&dir, "missing.term")])), 2);
}

#[test]
fn normalizing_the_counterexample_takes_one_step() {
    let dir = TempDir::new().unwrap();
    let host = write(&dir, "g.term", G);
    let out = path(&dir, "trace.json");
    let o = sdrw(&[
        "rewrite",
        &host,
        "--ruleset",
        "fs",
        "--normalize",
        "--strategy",
        "rule-order",
        "--out",
        &out,
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let trace: TraceJson = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(trace.steps.len(), 1);
    assert_eq!(trace.steps[0].rule, "FS3");
    assert!(trace.normal_form);
}

#[test]
fn step_lists_and_applies_by_index() {
    let dir = TempDir::new().unwrap();
    let host = write(&dir, "g.term", G);
    let o = sdrw(&["rewrite", &host, "--ruleset", "fs", "--step"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 2);
    let out = path(&dir, "t.json");
    let o = sdrw(&[
        "rewrite",
        &host,
        "--ruleset",
        "fs",
        "--step",
        "--index",
        "1",
        "--out",
        &out,
    ]);
    assert_eq!(code(&o), 0);
    let trace: TraceJson = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(trace.steps[0].rule, "FS4");
    assert_eq!(
        code(&sdrw(&["rewrite", &host, "--ruleset", "fs", "--step", "--index", "2"])),
        3
    );
    let normal = write(&dir, "n.term", "m ; d");
    assert_eq!(code(&sdrw(&["rewrite", &normal, "--ruleset", "fs", "--step"])), 3);
}

#[test]
fn frobenius_mode_accepts_non_ma_hosts() {
    let dir = TempDir::new().unwrap();
    let host = write(
        &dir,
        "mu.json",
        r#"{"nodes": [{"id": 0, "colour": "•"}], "edges": [], "inputs": [0, 0], "outputs": [0]}"#,
    );
    assert_eq!(code(&sdrw(&["rewrite", &host, "--ruleset", "ba", "--normalize"])), 2);
    let o = sdrw(&[
        "rewrite",
        &host,
        "--ruleset",
        "ba",
        "--normalize",
        "--mode",
        "frobenius",
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn bialgebra_rule_fires_on_mult_then_comult() {
    let dir = TempDir::new().unwrap();
    let host = write(&dir, "md.term", "m ; d");
    let out = path(&dir, "t.json");
    let dots = path(&dir, "dots");
    let o = sdrw(&[
        "rewrite",
        &host,
        "--ruleset",
        "ba",
        "--normalize",
        "--out",
        &out,
        "--dot-dir",
        &dots,
    ]);
    assert_eq!(code(&o), 0);
    let trace: TraceJson = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(trace.steps[0].rule, "BA9");
    assert!(Path::new(&dots).join("step-0001.dot").exists());
}

#[test]
fn measure_passes_fails_and_rejects() {
    let dir = TempDir::new().unwrap();
    let host = write(&dir, "g.term", "(m + id(1)) ; m ; d ; (d + id(1))");
    let out = path(&dir, "t.json");
    assert_eq!(
        code(&sdrw(&[
            "rewrite",
            &host,
            "--ruleset",
            "fs",
            "--normalize",
            "--out",
            &out
        ])),
        0
    );
    let o = sdrw(&["measure", &out, "--measure", "fs"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("PASS\n"));
    let json = sdrw(&["measure", &out, "--measure", "fs", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["passed"], true);

    // repeat the last step so a state occurs twice in a row
    let mut trace: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let last = trace["steps"].as_array().unwrap().last().unwrap().clone();
    trace["steps"].as_array_mut().unwrap().push(last);
    let bad = write(&dir, "repeated.json", &trace.to_string());
    let o = sdrw(&["measure", &bad, "--measure", "fs"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).ends_with("FAIL\n"));

    trace["steps"] = serde_json::json!([]);
    let empty = write(&dir, "empty.json", &trace.to_string());
    assert_eq!(code(&sdrw(&["measure", &empty, "--measure", "ba"])), 0);
    assert_eq!(
        code(&sdrw(&["measure", &write(&dir, "x.json", "[1, 2]"), "--measure", "fs"])),
        2
    );
}

#[test]
fn demos_pass_and_write_fixtures() {
    for (name, files) in [
        (
            "fs-nonconfluence",
            &["G.json", "H1.json", "H2.dot", "certificate.json"][..],
        ),
        (
            "boundary-uniqueness",
            &["host.json", "rule.json", "boundary-result.json"][..],
        ),
        ("convexity-blocking", &["host.json", "frobenius-result.dot"][..]),
    ] {
        let dir = TempDir::new().unwrap();
        let o = sdrw(&["demo", name, "--out-dir", dir.path().to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{name}: {}", stdout(&o));
        for f in files {
            assert!(dir.path().join(f).exists(), "{name}: {f}");
        }
    }
}

#[test]
fn out_dir_variable_sets_the_default_destination() {
    let dir = TempDir::new().unwrap();
    let host = write(&dir, "g.term", G);
    let o = Command::new(env!("CARGO_BIN_EXE_sdrw"))
        .args(["rewrite", &host, "--ruleset", "fs", "--normalize"])
        .env("SDRW_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert!(dir.path().join("trace.json").exists());
}

#[test]
fn extract_converts_both_ways() {
    let dir = TempDir::new().unwrap();
    let sig = ba_signature();
    let term = write(&dir, "g.term", G);
    let graph = sdrw(&["extract", &term]);
    assert_eq!(code(&graph), 0);
    let g = read_cospan(&stdout(&graph)).unwrap();
    let graph_file = write(&dir, "g.json", &stdout(&graph));
    let back = sdrw(&["extract", &graph_file]);
    assert_eq!(code(&back), 0);
    let t = parse(stdout(&back).trim(), &sig).unwrap();
    assert!(t.interpret(&sig).unwrap().is_isomorphic(&g));
    let dot = sdrw(&["extract", &term, "--format", "dot"]);
    assert!(stdout(&dot).starts_with("digraph"));
    let mu = write(
        &dir,
        "mu.json",
        r#"{"nodes": [{"id": 0, "colour": "•"}], "edges": [], "inputs": [0, 0], "outputs": [0]}"#,
    );
    assert_eq!(code(&sdrw(&["extract", &mu])), 1);
}
