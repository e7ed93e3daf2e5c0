use std::process::{Command, Output};

use serde_json::Value;

fn loccodes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loccodes")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn verify_f4_code() {
    let out = loccodes(&[
        "verify",
        "--graph",
        "hypercube:4",
        "--code",
        "inline:0000,0100,0010,0111,1111,1101",
        "--class",
        "lid",
        "--r",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["command"], "verify");
    assert_eq!(report["outcome"]["valid"], true);
    assert_eq!(report["outcome"]["size"], 6);
}

#[test]
fn verify_reports_witness() {
    let out = loccodes(&["verify", "--graph", "hypercube:3", "--code", "inline:000,011,100,111", "--class", "lid"]);
    assert_eq!(out.status.code(), Some(1));
    let failure = &json(&out)["outcome"]["failure"];
    assert_eq!(failure["kind"], "unseparated_pair");
    assert_eq!(failure["u"], "000");
    assert_eq!(failure["v"], "100");
}

#[test]
fn solve_complete_bipartite() {
    let out = loccodes(&["solve", "--graph", "kbipartite:2,4", "--class", "lld", "--r", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["outcome"]["size"], 2);
    assert_eq!(report["outcome"]["optimal"], true);
}

#[test]
fn solve_budget_and_twins() {
    let out = loccodes(&["solve", "--graph", "hypercube:5", "--class", "id", "--max-nodes", "5"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["outcome"]["optimal"], false);
    let out = loccodes(&["solve", "--graph", "fig:1", "--class", "id", "--r", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["outcome"]["admissible"], false);
}

#[test]
fn bounds() {
    let out = loccodes(&["bound", "lid-lower", "--n", "9"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["outcome"]["bound"], 62);
    let out = loccodes(&["--format", "text", "bound", "lid-upper", "--s", "3", "--k", "2"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "64");
    let out = loccodes(&["bound", "lid-lower", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn share_of_fig2() {
    let out = loccodes(&["share", "--graph", "fig:2", "--code", "inline:v1,v2,v3,v4", "--vertex", "v2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["outcome"]["share"], "13/6");
}

#[test]
fn pattern_and_window() {
    let dir = tempfile::tempdir().unwrap();
    let code = dir.path().join("king.txt");
    let out = loccodes(&[
        "construct",
        "pattern",
        "--id",
        "king-lld-3/16",
        "--torus",
        "8x8",
        "--out",
        code.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["outcome"]["size"], 12);
    let out = loccodes(&[
        "bound",
        "window",
        "--graph",
        "torus:king:8x8",
        "--code",
        code.to_str().unwrap(),
        "--w",
        "4",
        "--kmin",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["outcome"]["implied_lower_bound"], "12");
    let out = loccodes(&["construct", "pattern", "--id", "hex-cover-1/4", "--torus", "8x6"]);
    assert_eq!(json(&out)["outcome"]["size"], 12);
    let out = loccodes(&["construct", "pattern", "--id", "hex-cover-1/4", "--torus", "7x6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_writes_pattern_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.txt");
    let out = loccodes(&[
        "construct", "search", "--family", "king", "--det", "16", "--count", "3", "--class", "lld", "--out",
        file.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(text.starts_with("pattern king\n"));
    let out = loccodes(&["construct", "pattern", "--file", file.to_str().unwrap(), "--class", "lld"]);
    assert_eq!(out.status.code(), Some(0));
    let out = loccodes(&["construct", "search", "--family", "square", "--v1", "2,0", "--v2", "0,2", "--count", "1", "--class", "covering"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["outcome"]["found"], false);
}

#[test]
fn hamming_constructions() {
    let out = loccodes(&["construct", "hamming", "--s", "3"]);
    assert_eq!(json(&out)["outcome"]["size"], 16);
    let out = loccodes(&["construct", "hamming-lift", "--s", "2", "--k", "2"]);
    let report = json(&out);
    assert_eq!(report["outcome"]["size"], 8);
    assert_eq!(report["outcome"]["valid"], true);
    let out = loccodes(&["construct", "lift-cover", "--input", "inline:000,111", "--n", "3"]);
    assert_eq!(json(&out)["outcome"]["size"], 8);
    let out = loccodes(&["construct", "lift-cover", "--input", "inline:000", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_code_file_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.txt");
    std::fs::write(&file, "# header\n00\n13\n").unwrap();
    let out = loccodes(&["verify", "--graph", "hypercube:2", "--code", file.to_str().unwrap(), "--class", "lid"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(loccodes(&["verify", "--graph", "hypercube:2"]).status.code(), Some(2));
    assert_eq!(loccodes(&["solve", "--graph", "cube:3", "--class", "id"]).status.code(), Some(2));
    assert_eq!(loccodes(&["solve", "--graph", "cycle:5", "--class", "nope"]).status.code(), Some(2));
}

#[test]
fn paper_check_groups() {
    let out = loccodes(&["paper-check", "--only", "grids"]);
    let report = json(&out);
    let rows = report["outcome"]["rows"].as_array().unwrap();
    assert!(rows.len() >= 10);
    assert!(rows.iter().all(|r| r["group"] == "grids" && r["passed"] == true));
    assert_eq!(out.status.code(), Some(0));
    let out = loccodes(&["--threads", "2", "paper-check", "--only", "optima-"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["outcome"]["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn output_is_deterministic() {
    let strip = |o: &Output| {
        let mut v = json(o);
        v["elapsed_ms"] = Value::Null;
        for row in v["outcome"]["rows"].as_array_mut().into_iter().flatten() {
            row["millis"] = Value::Null;
        }
        v
    };
    let a = loccodes(&["--seed", "9", "paper-check", "--only", "general"]);
    let b = loccodes(&["--seed", "9", "--threads", "1", "paper-check", "--only", "general"]);
    assert_eq!(strip(&a), strip(&b));
}
