use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phase-toda")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn tau_table_starts_at_one() {
    let v = json(&["compute", "tau", "--nm", "3", "--matrix", "identity", "--s-all"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0], serde_json::json!(["0", "1"]));
    assert_eq!(rows[3], serde_json::json!(["3", "1"]));
}

#[test]
fn scalar_equivalence_passes() {
    let v = json(&["verify", "scalar-equivalence", "--N", "2", "--M", "2"]);
    assert_eq!(v["passed"], 1);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["items"][0]["status"], "pass");
}

#[test]
fn plane_partitions_with_diagonal() {
    let out = run(&["--format", "csv", "enumerate", "pp", "--N", "3", "--M", "4", "--contains", "3,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("3 1 1 / 3 1 1 / 2 1 1,")));
    assert!(text.lines().skip(1).all(|l| l.ends_with("\"(3,1,1)\"")));
}

#[test]
fn scalar_desk_value() {
    let v = json(&["compute", "scalar", "--N", "1", "--M", "1"]);
    for row in v["rows"].as_array().unwrap() {
        assert_eq!(row[1], "u1*v1^-1 + u1^-1*v1");
    }
}

#[test]
fn random_matrix_needs_a_seed() {
    let out = run(&["compute", "tau", "--nm", "3", "--matrix", "random"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--seed"));
    assert_eq!(run(&["verify", "bilinear", "--nm", "2"]).status.code(), Some(2));
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(run(&["suite", "nope"]).status.code(), Some(2));
    let dir = std::env::temp_dir().join(format!("phase-toda-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let singular = dir.join("singular.csv");
    std::fs::write(&singular, "0,1\n1,0\n").unwrap();
    let out = run(&["compute", "tau", "--nm", "2", "--matrix", "file", "--matrix-file", singular.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let missing = dir.join("missing.csv");
    let out = run(&["compute", "tau", "--nm", "2", "--matrix", "file", "--matrix-file", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn matrix_file_and_output_path() {
    let dir = std::env::temp_dir().join(format!("phase-toda-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.csv");
    std::fs::write(&a, "2,1\n1,1\n").unwrap();
    let dest = dir.join("tau.csv");
    let out = run(&[
        "--format", "csv", "--output", dest.to_str().unwrap(),
        "compute", "tau", "--nm", "2", "--matrix", "file", "--matrix-file", a.to_str().unwrap(), "--s", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&dest).unwrap(), "s,tau\n2,1\n");
}

#[test]
fn verify_reports_are_deterministic() {
    let args = ["verify", "rtt", "--M", "1", "--pairs", "3", "--seed", "11"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let args = ["verify", "bilinear", "--nm", "3", "--seed", "5", "--tuples", "2"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn toda_suite_is_deterministic() {
    let (a, b) = (run(&["suite", "toda", "--seed", "7"]), run(&["suite", "toda", "--seed", "7"]));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stderr).contains("wall time"));
    assert!(!String::from_utf8_lossy(&a.stdout).contains("wall"));
}

#[test]
fn correspondence_commands_pass() {
    for sub in ["limits", "single-det", "recursions"] {
        let v = json(&["verify", sub, "--N", "2", "--M", "2"]);
        assert_eq!(v["failed"], 0, "{sub}");
        assert!(v["passed"].as_u64().unwrap() > 0, "{sub}");
    }
    let v = json(&["verify", "linear", "--nm", "2", "--matrix", "identity", "--j", "1"]);
    assert_eq!(v["failed"], 0);
    let v = json(&["verify", "prop1", "--nm", "3", "--seed", "4"]);
    assert_eq!(v["failed"], 0);
}

#[test]
fn correlator_matches_its_determinant() {
    let v = json(&["compute", "correlator", "--N", "2", "--M", "2", "--kind", "i", "--k", "1"]);
    assert_eq!(v["rows"][0][1], v["rows"][0][2]);
    let v = json(&["compute", "correlator", "--N", "2", "--M", "2", "--kind", "n-point", "--r", "2,1"]);
    assert_eq!(v["rows"][0][1], v["rows"][0][2]);
}
