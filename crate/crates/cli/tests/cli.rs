//! End-to-end runs of the `polyorbit` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyorbit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_matrix(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn formula_values(doc: &Value) -> Vec<String> {
    doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["formula_value"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn formula_values_and_guard() {
    let out = run(&["formula", "--n", "2", "--q", "2", "--t", "1", "--k", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(formula_values(&json(&out)), ["12", "72"]);

    let out = run(&["formula", "--n", "2", "--q", "2", "--t", "0", "--k", "0"]);
    assert_eq!(formula_values(&json(&out)), ["6", "6"]);

    let out = run(&["formula", "--n", "2", "--q", "2", "--t", "2", "--k", "1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("smaller than the determinant degree"));

    let out = run(&["formula", "--n", "2", "--q", "6", "--t", "0", "--k", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn large_values_stay_exact() {
    let out = run(&["formula", "--n", "4", "--q", "9", "--t", "3", "--k", "40"]);
    assert_eq!(code(&out), 0);
    let orbit = &formula_values(&json(&out))[0];
    assert!(orbit.len() > 100, "{orbit}");
}

#[test]
fn verify_default_grid_passes_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let out = run(&["verify", "--out", a.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = run(&["verify", "--shards", "3", "--out", b.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    let doc: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(doc["passed"], true);
    assert!(doc["reports"].as_array().unwrap().len() > 500);
}

#[test]
fn verify_single_points() {
    let out = run(&["verify", "--n", "2", "--q", "3", "--k", "2"]);
    assert_eq!(code(&out), 0);
    let out = run(&["verify", "--q", "2", "--bounds", "2,1,1"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    let checks: Vec<&str> = doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["check"].as_str().unwrap())
        .collect();
    assert!(checks.contains(&"r_scaling"));
    assert!(checks.contains(&"lemma2"));
}

#[test]
fn injected_mismatch_fails() {
    let out = run(&[
        "verify",
        "--n",
        "2",
        "--q",
        "2",
        "--k",
        "1",
        "--inject-mismatch",
    ]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn brute_census_and_budget() {
    let out = run(&["brute", "--n", "2", "--q", "2", "--k", "1"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["census"]["buckets"]["0"], "24");
    assert_eq!(doc["census"]["buckets"]["1"], "72");

    let out = run(&[
        "brute", "--n", "3", "--q", "2", "--k", "1", "--budget", "1000",
    ]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("budget"));
}

#[test]
fn brute_single_orbit() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_matrix(
        dir.path(),
        "m.json",
        r#"{"field":{"p":2,"e":1},"entries":[[[1],[]],[[],[0,1]]]}"#,
    );
    let out = run(&["brute", "--input", &m, "--k", "1"]);
    assert_eq!(code(&out), 0);
    let report = &json(&out)["reports"][0];
    assert_eq!(report["oracle_value"], "12");
    assert_eq!(report["match"], true);
}

#[test]
fn hnf_examples() {
    let dir = tempfile::tempdir().unwrap();
    let id = write_matrix(
        dir.path(),
        "id.json",
        r#"{"field":{"p":3,"e":1},"entries":[[[1],[]],[[],[1]]]}"#,
    );
    let doc = json(&run(&["hnf", "--input", &id]));
    assert_eq!(doc["h"], doc["input"]);
    assert_eq!(doc["u"], doc["input"]);

    let swap = write_matrix(
        dir.path(),
        "swap.json",
        r#"{"field":{"p":2,"e":1},"entries":[[[],[1]],[[0,1],[]]]}"#,
    );
    let doc = json(&run(&["hnf", "--input", &swap]));
    let want: Value = serde_json::from_str("[[[0,1],[]],[[],[1]]]").unwrap();
    assert_eq!(doc["h"]["entries"], want);
    assert_eq!(doc["det_degree"], 1);

    let singular = write_matrix(
        dir.path(),
        "s.json",
        r#"{"field":{"p":2,"e":1},"entries":[[[1],[1]],[[1],[1]]]}"#,
    );
    let out = run(&["hnf", "--input", &singular]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("singular"));

    let reducible = write_matrix(
        dir.path(),
        "r.json",
        r#"{"field":{"p":2,"e":2,"modulus":[1,0,1]},"entries":[[[1]]]}"#,
    );
    assert_eq!(code(&run(&["hnf", "--input", &reducible])), 2);
    assert_eq!(
        code(&run(&["hnf", "--input", "/nonexistent/matrix.json"])),
        2
    );
}

#[test]
fn lemma2_counts() {
    let out = run(&["lemma2", "--bounds", "1,1", "--q", "2"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["reports"][0]["oracle_value"], "4");
    assert_eq!(doc["reports"][1]["formula_value"], "4");

    let out = run(&["lemma2", "--bounds", "1,1", "--q", "4"]);
    assert_eq!(code(&out), 2);
    let out = run(&[
        "lemma2",
        "--bounds",
        "1,1",
        "--q",
        "4",
        "--modulus",
        "1,1,1",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["reports"][0]["oracle_value"], "16");

    let out = run(&[
        "lemma2",
        "--bounds",
        "30,30,30",
        "--q",
        "5",
        "--formula-only",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn moves_preserve_counts() {
    let out = run(&["verify-moves", "--max-degree", "1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let doc = json(&out);
    assert_eq!(doc["passed"], true);
    assert!(!doc["records"].as_array().unwrap().is_empty());

    let dir = tempfile::tempdir().unwrap();
    let m = write_matrix(
        dir.path(),
        "m.json",
        r#"{"field":{"p":2,"e":1},"entries":[[[0,1],[1]],[[1],[0,0,1]]]}"#,
    );
    let out = run(&["verify-moves", "--input", &m]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let records = json(&out)["records"].as_array().unwrap().clone();
    assert_eq!(records[0]["move"]["op"], "triangularize");
}

#[test]
fn zcase_reports() {
    let doc = json(&run(&["zcase", "classes", "--det", "4"]));
    assert_eq!(doc["left_classes"].as_array().unwrap().len(), 7);
    assert_eq!(doc["snf_classes"].as_array().unwrap().len(), 2);

    let doc = json(&run(&["zcase", "ratio", "--det", "4", "--T", "200"]));
    let last = doc["points"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(last["T"], 200);
    assert!((last["ratio_value"].as_f64().unwrap() - 1.0 / 6.0).abs() < 0.05);
    assert_eq!(code(&run(&["zcase", "ratio", "--det", "6"])), 2);

    let doc = json(&run(&["zcase", "constant", "--n", "2", "--k", "4"]));
    assert!((doc["constant"].as_f64().unwrap() - 10.5).abs() < 1e-9);
    assert_eq!(
        code(&run(&["zcase", "constant", "--n", "3", "--k", "1"])),
        2
    );
    let out = run(&[
        "zcase",
        "constant",
        "--n",
        "3",
        "--k",
        "1",
        "--zeta",
        "3=1.2020569031595942",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn csv_output_is_flat() {
    let out = run(&[
        "formula", "--n", "2", "--q", "2", "--t", "1", "--k", "1", "--format", "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "check,formula_value,match,oracle_value,params.k,params.n,params.q,params.t"
    );
    assert_eq!(lines.next().unwrap(), "orbit,12,,,1,2,2,1");
    assert_eq!(lines.next().unwrap(), "total,72,,,1,2,2,1");

    let out = run(&["zcase", "classes", "--det", "4", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 8);
}

#[test]
fn invalid_arguments_exit_two() {
    assert_eq!(code(&run(&["formula", "--n", "2"])), 2);
    assert_eq!(code(&run(&["verify", "--n", "2"])), 2);
    assert_eq!(code(&run(&["zcase", "ratio", "--det", "4", "--T", "x"])), 2);
    assert_eq!(
        code(&run(&[
            "brute", "--n", "2", "--q", "2", "--k", "1", "--shards", "0"
        ])),
        2
    );
}
