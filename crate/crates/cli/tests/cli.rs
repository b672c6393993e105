use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn mldeg(args: &[&str]) -> Output {
    mldeg_env(args, &[])
}

fn mldeg_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mldeg"));
    cmd.args(args).env_remove("MLDEG_MAX_N");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "status {:?}, stderr {}", out.status, String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const GENERIC_2X3: &str = r#"{"rows": 2, "cols": 3, "entries": [["1", "0", "3"], ["0", "1", "-2/5"]]}"#;

/// Every JSON number in the output must be a string.
fn assert_no_numbers(v: &Value) {
    match v {
        Value::Number(n) => panic!("numeric JSON value {n}"),
        Value::Array(items) => items.iter().for_each(assert_no_numbers),
        Value::Object(map) => map.values().for_each(assert_no_numbers),
        _ => {}
    }
}

#[test]
fn random_matrices_round_trip_through_invariants() {
    let dir = TempDir::new().unwrap();
    for k in 0..50u64 {
        let n = 1 + (k as usize * 7) % 10;
        let r = 1 + (k as usize * 3) % n;
        let seed = 1000 + k;
        let file = dir.path().join(format!("m{k}.json"));
        let out = mldeg(&[
            "random",
            "--n",
            &n.to_string(),
            "--r",
            &r.to_string(),
            "--seed",
            &seed.to_string(),
            "--output",
            s(&file),
        ]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        let inv = json_of(&mldeg(&["invariants", "--input", s(&file)]));
        let uni = json_of(&mldeg(&["uniform", "--n", &n.to_string(), "--r", &r.to_string()]));
        assert_eq!(inv["rmld"], uni["rmld"], "n = {n}, r = {r}, seed = {seed}");
        assert_eq!(inv["rank"], Value::String(r.to_string()));
        assert_no_numbers(&inv);
    }
}

#[test]
fn random_is_deterministic_and_uniform() {
    let a = mldeg(&["random", "--n", "3", "--r", "2", "--seed", "5"]);
    let b = mldeg(&["random", "--n", "3", "--r", "2", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
    let m = json_of(&mldeg(&["random", "--n", "4", "--r", "1", "--seed", "2"]));
    let row = m["entries"][0].as_array().unwrap();
    assert_eq!(row.len(), 4);
    assert!(row.iter().all(|e| e != "0"));

    let dir = TempDir::new().unwrap();
    let file = write(&dir, "u23.json", &String::from_utf8(a.stdout).unwrap());
    let inv = json_of(&mldeg(&["invariants", "--input", s(&file)]));
    assert_eq!(inv["rmld"], "3");
    assert_eq!(inv["tutte"], serde_json::json!([["0", "1", "1"], ["1", "0", "1"], ["2", "0", "1"]]));
}

#[test]
fn invariants_examples() {
    let dir = TempDir::new().unwrap();
    let generic = write(&dir, "g.json", GENERIC_2X3);
    let inv = json_of(&mldeg(&["invariants", "--input", s(&generic)]));
    assert_eq!(inv["rmld"], "3");
    assert_eq!(inv["mld"], "2");
    assert_eq!(inv["charpoly"], serde_json::json!(["2", "-3", "1"]));
    assert_eq!(inv["poincare"], serde_json::json!(["1", "3", "2"]));
    assert_no_numbers(&inv);

    let looped = write(&dir, "l.json", r#"{"rows": 2, "cols": 3, "entries": [["1", "0", "0"], ["1", "1", "0"]]}"#);
    let inv = json_of(&mldeg(&["invariants", "--input", s(&looped)]));
    assert_eq!(inv["rmld"], "0");
    assert_eq!(inv["loops"], serde_json::json!(["3"]));
    assert_eq!(inv["poincare"], Value::Null);

    let u34 = write(&dir, "u34.json", r#"{"n": 4, "bases": [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]}"#);
    assert_eq!(json_of(&mldeg(&["rmld", "--input", s(&u34)]))["rmld"], "7");

    let sc = json_of(&mldeg(&["score-count", "--input", s(&generic), "--d", "3"]));
    assert_eq!(sc["value"], "10");
}

#[test]
fn uniform_examples() {
    assert_eq!(json_of(&mldeg(&["uniform", "--n", "6", "--r", "3"]))["rmld"], "31");
    assert_eq!(json_of(&mldeg(&["uniform", "--n", "5", "--r", "4"]))["rmld"], "15");
    let out = json_of(&mldeg(&["uniform", "--n", "3", "--r", "2", "--d", "3"]));
    assert_eq!(out["score_count"], "10");
    assert_eq!(code(&mldeg(&["uniform", "--n", "2", "--r", "3"])), 2);
}

#[test]
fn oracle_examples() {
    let dir = TempDir::new().unwrap();
    let generic = write(&dir, "g.json", GENERIC_2X3);
    let rep = json_of(&mldeg(&["oracle", "--input", s(&generic), "--d", "2", "--seed", "7"]));
    assert_eq!(rep["count"], "3");
    assert_eq!(rep["predicted"], "3");
    assert_eq!(rep["agrees"], true);
    assert_no_numbers(&rep);

    let line = write(&dir, "line.json", r#"{"rows": 1, "cols": 2, "entries": [["2", "-7"]]}"#);
    let rep = json_of(&mldeg(&["oracle", "--input", s(&line), "--d", "3", "--seed", "1"]));
    assert_eq!((rep["count"].as_str(), rep["predicted"].as_str()), (Some("2"), Some("2")));

    let big = mldeg(&["random", "--n", "6", "--r", "4", "--seed", "3"]);
    let big = write(&dir, "big.json", &String::from_utf8(big.stdout).unwrap());
    let out = mldeg(&["oracle", "--input", s(&big), "--d", "2"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("capacity exceeded"));

    let out = mldeg_env(&["oracle", "--input", s(&line), "--d", "2"], &[("MLDEG_MAX_N", "1")]);
    assert_eq!(code(&out), 3);
    let out = mldeg_env(&["oracle", "--input", s(&line), "--d", "2"], &[("MLDEG_MAX_N", "many")]);
    assert_eq!(code(&out), 2);

    let bases = write(&dir, "b.json", r#"{"n": 2, "bases": [[1], [2]]}"#);
    assert_eq!(code(&mldeg(&["oracle", "--input", s(&bases)])), 2);
}

fn statuses(report: &Value) -> Vec<(String, String)> {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["name"].as_str().unwrap().to_string(), c["status"].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn verify_examples() {
    let dir = TempDir::new().unwrap();
    let generic = write(&dir, "g.json", GENERIC_2X3);
    let out = mldeg(&["verify", "--input", s(&generic), "--d", "0", "--d", "1", "--d", "2", "--d", "3"]);
    assert_eq!(code(&out), 0);
    let rep: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep["passed"], true);
    assert!(statuses(&rep).iter().all(|(_, st)| st == "pass"), "{rep}");

    let looped = write(&dir, "l.json", r#"{"rows": 2, "cols": 3, "entries": [["1", "0", "0"], ["1", "1", "0"]]}"#);
    let out = mldeg(&["verify", "--input", s(&looped)]);
    assert_eq!(code(&out), 0);
    let rep: Value = serde_json::from_slice(&out.stdout).unwrap();
    for (name, st) in statuses(&rep) {
        let expected = if name.starts_with("stratification") || name == "poincare" { "skipped" } else { "pass" };
        assert_eq!(st, expected, "{name}");
    }
    let degree_details: Vec<&str> = rep["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["name"].as_str().unwrap().starts_with("solver"))
        .map(|c| c["detail"].as_str().unwrap())
        .collect();
    assert!(degree_details.iter().all(|d| d.starts_with("count 0 = predicted 0")), "{degree_details:?}");

    // the Fano plane has no rational realization
    let lines = [[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 5, 6]];
    let mut bases = Vec::new();
    for a in 1..=7 {
        for b in a + 1..=7 {
            for c in b + 1..=7 {
                if !lines.contains(&[a, b, c]) {
                    bases.push(format!("[{a}, {b}, {c}]"));
                }
            }
        }
    }
    let fano = write(&dir, "fano.json", &format!("{{\"n\": 7, \"bases\": [{}]}}", bases.join(", ")));
    let out = mldeg(&["verify", "--input", s(&fano)]);
    assert_eq!(code(&out), 0);
    let rep: Value = serde_json::from_slice(&out.stdout).unwrap();
    for (name, st) in statuses(&rep) {
        let expected = if name.starts_with("solver") { "skipped" } else { "pass" };
        assert_eq!(st, expected, "{name}");
    }
    assert_eq!(json_of(&mldeg(&["rmld", "--input", s(&fano)]))["rmld"], "21");
}

#[test]
fn usage_and_parse_errors() {
    let dir = TempDir::new().unwrap();
    let broken = write(&dir, "bad.json", "{\"rows\": 1,\n \"cols\": 1,\n \"entries\": [[\"1\"]\n");
    let out = mldeg(&["invariants", "--input", s(&broken)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line "), "{}", String::from_utf8_lossy(&out.stderr));

    let bad_value = write(&dir, "val.json", r#"{"rows": 1, "cols": 1, "entries": [["one"]]}"#);
    assert_eq!(code(&mldeg(&["invariants", "--input", s(&bad_value)])), 2);
    assert_eq!(code(&mldeg(&["invariants", "--input", s(&dir.path().join("missing.json"))])), 2);
    assert_eq!(code(&mldeg(&["score-count"])), 2);
    assert_eq!(code(&mldeg(&["frobnicate"])), 2);
    assert_eq!(code(&mldeg(&["uniform", "--n", "3", "--r", "2", "--format", "xml"])), 2);
}

#[test]
fn output_file_and_table_format() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("report.json");
    let out = mldeg(&["uniform", "--n", "5", "--r", "2", "--output", s(&target)]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let rep: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(rep["rmld"], "7");

    let table = mldeg(&["uniform", "--n", "5", "--r", "2", "--format", "table"]);
    let text = String::from_utf8(table.stdout).unwrap();
    assert!(text.lines().any(|l| l.split_whitespace().eq(["rmld", "7"])), "{text}");
}
