use std::path::Path;
use std::process::{Command, Output};

use wiener_max::{vwwi_tree, SolveReportFile, TreeFile, WeightedTree};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wiener-max"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const N8: &str = r#"{"weights":[0.3,0.9,0.6,0.5,0.7,0.1,0.4,0.8],"degrees":[2,1,3,1,3,1,2,1]}"#;

#[test]
fn invalid_degree_sum_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "bad.json",
        r#"{"weights":[1,1,1],"degrees":[2,2,2]}"#,
    );
    let out = bin(&["validate", &f]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degree sum 6 != 2(n-1)=4"));
}

#[test]
fn malformed_json_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "bad.json",
        r#"{"weights":[1,"x"],"degrees":[1,1]}"#,
    );
    let out = bin(&["validate", &f]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("weights[1]"));
    let f = write(dir.path(), "missing.json", r#"{"weights":[1,1]}"#);
    let out = bin(&["ub", &f]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degrees"));
}

#[test]
fn missing_file_exits_1() {
    assert_eq!(
        bin(&["validate", "/nonexistent/instance.json"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn unit_path_index() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "p4.json",
        r#"{"weights":[1,1,1,1],"edges":[[0,1],[1,2],[2,3]]}"#,
    );
    let out = bin(&["vwwi", &f]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "10\n");
}

#[test]
fn validate_prints_canonical_instance() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "i.json", N8);
    let out = bin(&["validate", &f]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["monotone"], true);
    assert_eq!(v["degrees"], serde_json::json!([3, 3, 2, 2, 1, 1, 1, 1]));
}

#[test]
fn solve_and_brute_agree_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "i.json", N8);
    let solve = bin(&["solve", &f]);
    assert_eq!(solve.status.code(), Some(0));
    let brute = bin(&["brute", &f]);
    let a: SolveReportFile = serde_json::from_slice(&solve.stdout).unwrap();
    let b: SolveReportFile = serde_json::from_slice(&brute.stdout).unwrap();
    assert!(a.optimal && b.optimal);
    assert_eq!(a.value, b.value);

    let out = dir.path().join("solution.json");
    let status = bin(&["solve", &f, "--out", out.to_str().unwrap()]);
    assert_eq!(status.status.code(), Some(0));
    let again = bin(&["vwwi", out.to_str().unwrap()]);
    let value: f64 = String::from_utf8_lossy(&again.stdout)
        .trim()
        .parse()
        .unwrap();
    assert!((value - a.value).abs() <= 1e-9 * a.value);

    let tree: TreeFile = serde_json::from_slice(&solve.stdout).unwrap();
    assert!(
        (vwwi_tree(&WeightedTree::from_file(&tree).unwrap()) - a.value).abs() <= 1e-9 * a.value
    );
}

#[test]
fn limit_without_proof_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "i.json",
        r#"{"weights":[9,8,7,6,5,4,1,2,3,4,5,6],"degrees":[4,4,2,2,2,2,1,1,1,1,1,1]}"#,
    );
    let out = bin(&["solve", &f, "--node-limit", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let report: SolveReportFile = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!report.optimal);
    assert_eq!(bin(&["solve", &f]).status.code(), Some(0));
}

#[test]
fn bound_greedy_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "i.json", N8);
    let ub = bin(&["ub", &f]);
    let v: serde_json::Value = serde_json::from_slice(&ub.stdout).unwrap();
    assert_eq!(v["method"], "rocp_matrix");
    let greedy = bin(&["greedy", &f]);
    let g: SolveReportFile = serde_json::from_slice(&greedy.stdout).unwrap();
    assert!(g.value <= v["value"].as_f64().unwrap());
    let csv = bin(&["greedy", &f, "--format", "csv"]);
    assert!(
        String::from_utf8_lossy(&csv.stdout).starts_with("value,nodes,pruned,seconds,optimal\n")
    );
}

#[test]
fn bench_output_is_reproducible() {
    let args = [
        "bench-error",
        "--n",
        "10,20",
        "--instances",
        "5",
        "--seed",
        "4",
    ];
    let a = bin(&args);
    let b = bin(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("n,instance,seed,ub,greedy,exact,re_estimate,seconds,nodes,optimal"));
    assert_eq!(text.lines().count(), 1 + 2 * (5 + 3));

    let gap = [
        "bench-gap",
        "--n",
        "8",
        "--instances",
        "3",
        "--omit-timing",
        "--threads",
        "2",
    ];
    assert_eq!(bin(&gap).stdout, bin(&gap).stdout);
    let time = bin(&[
        "bench-time",
        "--n",
        "8",
        "--instances",
        "2",
        "--format",
        "json",
    ]);
    let rows: serde_json::Value = serde_json::from_slice(&time.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 2);
}

#[test]
fn unknown_subcommand_is_rejected() {
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
}

#[test]
fn library_entry_point() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "s.json",
        r#"{"weights":[1,1,1,1],"degrees":[3,1,1,1]}"#,
    );
    let code = wiener_max::cli::run_with(["wiener-max", "solve", f.as_str()], &mut out, &mut err);
    assert_eq!(code, 0);
    let report: SolveReportFile = serde_json::from_slice(&out).unwrap();
    assert_eq!(report.value, 9.0);
    assert_eq!(report.nodes, 1);
}
