use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polybinom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn file(name: &str) -> String {
    data(name).display().to_string()
}

#[test]
fn chromatic_triangle_and_path() {
    let (code, v) = run_json(&["chromatic", "--json", &file("k3.graph")]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"]["chi_star"]["entries"], json!([0, 0, 0, 6]));

    let (code, v) = run_json(&["chromatic", "--json", &file("p3.graph")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["split"]["p"], json!([4, 6, 6, 4]));

    let out = run(&["chromatic", &file("k3.graph")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("chi* = (0,0,0,6)"), "{text}");
}

#[test]
fn chromatic_rejects_loops() {
    let (code, v) = run_json(&["chromatic", "--json", &file("loop.graph")]);
    assert_eq!(code, 2);
    assert_eq!(v["reason"], "loop");
}

#[test]
fn flow_reports() {
    let (code, v) = run_json(&["flow", "--json", &file("theta.graph")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["f_split"]["p"], json!([6, 6, 6, 6]));

    let (code, v) = run_json(&["flow", "--json", &file("double_edge.graph")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["phi_star"]["entries"], json!([0, 0, 1]));

    let (code, v) = run_json(&["flow", "--json", &file("tree.graph")]);
    assert_eq!(code, 2);
    assert_eq!(v["reason"], "bridge");
}

#[test]
fn order_reports() {
    let (code, v) = run_json(&["order", "--json", &file("chain3.poset")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["omega_star"]["entries"], json!([0, 0, 0, 1]));

    let (_, v) = run_json(&["order", "--json", &file("antichain2.poset")]);
    assert_eq!(v["result"]["split"]["p"], json!([1, 2, 1]));

    let (_, v) = run_json(&["order", "--json", &file("antichain4.poset")]);
    assert_eq!(v["result"]["omega_star"]["entries"], json!([0, 1, 11, 11, 1]));

    let out = run(&["order", &file("cyclic.poset")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let out = run(&["chromatic", &file("malformed.graph")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn caps_exit_with_three() {
    let out = run(&["chromatic", &file("edgeless11.graph")]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["chromatic", "--cap-edges", "2", &file("k3.graph")]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn table1_matches() {
    let (code, v) = run_json(&["table1", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["all_matched"], true);
}

#[test]
fn survey_counts_and_determinism() {
    let (code, a) = run_json(&["survey", "graphs", "--max-size", "4", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(a["totals"]["instances"], 10);
    assert_eq!(a["schema"], 1);
    let (_, mut b) = run_json(&["survey", "graphs", "--max-size", "4", "--json", "--threads", "1"]);
    let mut a = a;
    a.as_object_mut().unwrap().remove("elapsed_ms");
    b.as_object_mut().unwrap().remove("elapsed_ms");
    assert_eq!(a, b);
}

#[test]
fn survey_of_trees_skips_everything() {
    let (code, v) = run_json(&["survey", "flows", "--json", &file("tree.graph"), &file("p3.graph")]);
    assert_eq!(code, 0);
    assert_eq!(v["totals"]["skipped_by_reason"]["bridge"], 2);
    assert_eq!(v["totals"]["passed"], 0);
    assert_eq!(v["input_hashes"].as_object().unwrap().len(), 2);
}

#[test]
fn survey_csv_export() {
    let dir = std::env::temp_dir().join(format!("polybinom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("audits.csv");
    let out = run(&["survey", "posets", "--max-size", "3", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.lines().count() > 1);
    std::fs::remove_dir_all(dir).unwrap();
}
