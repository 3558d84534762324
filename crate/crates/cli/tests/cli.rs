use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lcycle::io::to_json;
use lcycle::KGraph;
use serde_json::Value;

fn lcycle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcycle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    })
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn generate(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let file = dir.join(name);
    let mut all = vec!["generate"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["-o", path_str(&file)]);
    let out = lcycle(&all);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    file
}

fn write_graph(dir: &Path, name: &str, g: &KGraph) -> PathBuf {
    let file = dir.join(name);
    std::fs::write(&file, to_json(g, None).unwrap()).unwrap();
    file
}

#[test]
fn generate_examples() {
    let dir = tempfile::tempdir().unwrap();
    let h0 = generate(dir.path(), "h0.json", &["h0", "--k", "3", "--l", "1", "--n", "8"]);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(h0).unwrap()).unwrap();
    assert_eq!(v["edges"].as_array().unwrap().len(), 21);
    assert_eq!(v["meta"]["generator"], "h0");
    assert_eq!(v["meta"]["schema_version"], lcycle::SCHEMA_VERSION);

    let out = lcycle(&["generate", "ideal", "--k", "3", "--l", "1", "--n", "9"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("even"));

    let out = lcycle(&["generate", "ystar", "--k", "3", "--b", "1", "--n", "8"]);
    assert_eq!(json_of(&out)["edges"].as_array().unwrap().len(), 6);

    let out = lcycle(&["generate", "random", "--k", "3", "--n", "8"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn seeded_generation_is_reproducible() {
    let args = [
        "generate",
        "perturbed",
        "--k",
        "3",
        "--l",
        "1",
        "--n",
        "12",
        "--seed",
        "5",
    ];
    let (a, b) = (lcycle(&args), lcycle(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["meta"]["seed"], 5);
}

#[test]
fn solve_examples() {
    let dir = tempfile::tempdir().unwrap();
    let h0 = generate(dir.path(), "h0.json", &["h0", "--k", "3", "--l", "1", "--n", "8"]);
    let out = lcycle(&["solve", path_str(&h0), "--method", "exact"]);
    assert_eq!(code(&out), 0);
    let r = json_of(&out);
    assert_eq!(r["found"], false);
    assert_eq!(r["method"], "exact");

    let ideal = generate(dir.path(), "ideal.json", &["ideal", "--k", "3", "--l", "1", "--n", "8"]);
    let out = lcycle(&["solve", path_str(&ideal), "--method", "pipeline"]);
    assert_eq!(code(&out), 0);
    let r = json_of(&out);
    assert_eq!(r["found"], true);
    assert_eq!(r["method"], "pipeline");
    assert_eq!(r["cycle"].as_array().unwrap().len(), 8);
    assert_eq!(r["stage_trace"]["stages"].as_array().unwrap().len(), 7);

    let out = lcycle(&["solve", path_str(&h0), "--method", "exact", "--budget-nodes", "1"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json_of(&out)["found"], "exhausted");
}

#[test]
fn pipeline_failure_and_auto_fallback() {
    let dir = tempfile::tempdir().unwrap();
    let h0 = generate(dir.path(), "h0.json", &["h0", "--k", "3", "--l", "1", "--n", "12"]);
    let out = lcycle(&["solve", path_str(&h0), "--method", "pipeline"]);
    assert_eq!(code(&out), 1);
    assert!(json_of(&out)["failure"]["stage"].is_string());

    let out = lcycle(&["solve", path_str(&h0)]);
    assert_eq!(code(&out), 0);
    let r = json_of(&out);
    assert_eq!(r["found"], false);
    assert_eq!(r["stage_trace"]["outcome"], "no-cycle");
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n": 4, "k": 3, "edges": [[0, 1, 9]]}"#).unwrap();
    assert_eq!(code(&lcycle(&["solve", path_str(&bad), "--l", "1"])), 2);
    assert_eq!(code(&lcycle(&["solve", "/nonexistent.json", "--l", "1"])), 2);

    let ideal = generate(dir.path(), "ideal.json", &["ideal", "--k", "3", "--l", "1", "--n", "8"]);
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"eps1": 0.3, "epsilon": 1}"#).unwrap();
    assert_eq!(
        code(&lcycle(&["solve", path_str(&ideal), "--config", path_str(&cfg)])),
        2
    );
    std::fs::write(&cfg, r#"{"eps1": 0.2, "eps2": 0.3}"#).unwrap();
    assert_eq!(
        code(&lcycle(&["solve", path_str(&ideal), "--config", path_str(&cfg)])),
        2
    );
    std::fs::write(&cfg, r#"{"eps1": 0.25, "eps2": 0.1}"#).unwrap();
    assert_eq!(
        code(&lcycle(&["solve", path_str(&ideal), "--config", path_str(&cfg)])),
        0
    );
}

#[test]
fn binary_instances_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let bin = dir.path().join("i.bin");
    let out = lcycle(&[
        "generate",
        "ideal",
        "--k",
        "3",
        "--l",
        "1",
        "--n",
        "8",
        "--format",
        "binary",
        "-o",
        path_str(&bin),
    ]);
    assert_eq!(code(&out), 0);
    let out = lcycle(&["solve", path_str(&bin), "--l", "1"]);
    assert_eq!(json_of(&out)["found"], true);
}

#[test]
fn tile_examples() {
    let dir = tempfile::tempdir().unwrap();
    let complete = write_graph(dir.path(), "k20.json", &KGraph::complete(20, 3).unwrap());
    let r = json_of(&lcycle(&["tile", path_str(&complete), "--b", "2"]));
    assert_eq!(r["outcome"]["variant"], "tiling");
    assert_eq!(r["uncovered"], 0);

    let h0 = generate(dir.path(), "h0.json", &["h0", "--k", "3", "--l", "1", "--n", "20"]);
    let r = json_of(&lcycle(&["tile", path_str(&h0), "--b", "2", "--beta", "0.05"]));
    assert_eq!(r["outcome"]["variant"], "certificate");
    assert_eq!(r["outcome"]["certificate"]["e_b"], 0);

    let empty = write_graph(dir.path(), "e.json", &KGraph::empty(10, 3).unwrap());
    let r = json_of(&lcycle(&["tile", path_str(&empty), "--b", "1"]));
    assert_eq!(r["outcome"]["variant"], "tiling");
    assert_eq!(r["outcome"]["degenerate"], true);
    assert_eq!(r["outcome"]["tiling"]["copies"].as_array().unwrap().len(), 0);
}

fn csv_rows(out: &Output) -> Vec<Vec<String>> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

#[test]
fn experiment_examples() {
    let out = lcycle(&[
        "experiment",
        "--family",
        "h0",
        "--k",
        "3",
        "--l",
        "1",
        "--n",
        "8,12,16",
        "--check",
        "no-hamilton",
    ]);
    assert_eq!(code(&out), 0);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 4);
    let col = rows[0].iter().position(|c| c == "no-hamilton").unwrap();
    assert!(rows[1..].iter().all(|r| r[col] == "pass"));

    let out = lcycle(&[
        "experiment",
        "--family",
        "ideal",
        "--k",
        "3",
        "--l",
        "1",
        "--n",
        "8,12,16",
        "--check",
        "pipeline-finds-cycle",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let r = json_of(&out);
    let rows = r["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|row| row["checks"]["pipeline-finds-cycle"] == "pass"));
    assert_eq!(r["schema_version"], lcycle::SCHEMA_VERSION);

    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{"family": {"name": "h0", "k": [3], "l": [1], "n": []}, "checks": ["no-hamilton"]}"#,
    )
    .unwrap();
    assert_eq!(code(&lcycle(&["experiment", "--spec", path_str(&spec)])), 2);
}

#[test]
fn failing_check_exits_1() {
    let out = lcycle(&[
        "experiment",
        "--family",
        "h0",
        "--k",
        "3",
        "--l",
        "1",
        "--n",
        "8",
        "--check",
        "has-hamilton",
    ]);
    assert_eq!(code(&out), 1);
    let rows = csv_rows(&out);
    assert_eq!(rows[1][rows[0].iter().position(|c| c == "outcome").unwrap()], "fail");
}

#[test]
fn spec_file_writes_output() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    let table = dir.path().join("rows.csv");
    let text = format!(
        r#"{{"family": {{"name": "perturbed", "k": [3], "l": [1], "n": [12]}}, "trials": 3, "seed": 11,
            "checks": ["pipeline-finds-cycle", "has-hamilton"], "output": {{"path": {:?}, "format": "csv"}}}}"#,
        path_str(&table)
    );
    std::fs::write(&spec, text).unwrap();
    let out = lcycle(&["experiment", "--spec", path_str(&spec)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let body = std::fs::read_to_string(&table).unwrap();
    assert_eq!(body.lines().count(), 4);
    assert!(body.lines().nth(1).unwrap().contains(",11,"));
}

#[test]
fn deterministic_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for target in [&a, &b] {
        let out = lcycle(&[
            "experiment",
            "--family",
            "perturbed",
            "--k",
            "3",
            "--l",
            "1",
            "--n",
            "12,16",
            "--trials",
            "3",
            "--seed",
            "4",
            "--check",
            "pipeline-finds-cycle,codegree-at-threshold",
            "--deterministic",
            "-o",
            path_str(target),
        ]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let ideal = generate(dir.path(), "i.json", &["ideal", "--k", "5", "--l", "2", "--n", "12"]);
    let solve = ["solve", path_str(&ideal), "--deterministic"];
    assert_eq!(lcycle(&solve).stdout, lcycle(&solve).stdout);
}
