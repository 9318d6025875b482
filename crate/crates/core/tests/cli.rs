use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::tempdir;

fn depin(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_depin-sim"))
        .current_dir(dir)
        .args(args)
        .env_remove("DEPIN_LLM_ENDPOINT")
        .env_remove("DEPIN_LLM_KEY")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn default_run_succeeds() {
    let dir = tempdir().unwrap();
    let out = depin(dir.path(), &["run", "--out-dir", "o", "--charts", "off"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(dir.path().join("o/trajectory.csv")).unwrap();
    assert_eq!(csv.lines().count(), 97);
    assert!(!dir.path().join("o/charts").exists());
}

#[test]
fn malformed_config_is_a_usage_error() {
    let dir = tempdir().unwrap();
    fs::write(dir.path().join("bad.json"), "{\"simulation\": {\"seed\": }").unwrap();
    let out = depin(dir.path(), &["run", "--config", "bad.json"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn llm_policy_without_backend_is_a_usage_error() {
    let dir = tempdir().unwrap();
    let out = depin(dir.path(), &["run", "--policy", "llm"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("DEPIN_LLM_ENDPOINT"));
}

#[test]
fn compare_without_patience_values_is_a_usage_error() {
    let dir = tempdir().unwrap();
    assert_eq!(code(&depin(dir.path(), &["compare", "--seeds", "2"])), 2);
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let dir = tempdir().unwrap();
    assert_eq!(code(&depin(dir.path(), &["run", "--horizon", "3"])), 2);
}

#[test]
fn score_exit_codes() {
    let dir = tempdir().unwrap();
    fs::write(dir.path().join("empty.csv"), "").unwrap();
    assert_eq!(code(&depin(dir.path(), &["score", "empty.csv"])), 2);

    fs::write(dir.path().join("flat.csv"), "price\n3\n3\n3\n3\n").unwrap();
    let out = depin(dir.path(), &["score", "flat.csv"]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["stability"], 0.0);
}

#[test]
fn unreachable_backend_is_a_runtime_error() {
    let dir = tempdir().unwrap();
    let listener = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    let endpoint = format!("http://{}", listener.local_addr().unwrap());
    drop(listener);
    fs::write(
        dir.path().join("c.json"),
        format!(r#"{{"simulation": {{"horizon_months": 2, "policy": "llm", "llm": {{"endpoint": "{endpoint}", "retries": 0, "timeout_ms": 500}}}}}}"#),
    )
    .unwrap();
    let out = depin(dir.path(), &["run", "--config", "c.json", "--out-dir", "o"]);
    assert_eq!(code(&out), 3);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("month 1") && stderr.contains("node-decisions"), "{stderr}");
    assert!(!dir.path().join("o/trajectory.csv").exists());
}

#[test]
fn vesting_and_reference_commands() {
    let dir = tempdir().unwrap();
    let out = depin(dir.path(), &["vesting", "--horizon", "24", "--out-dir", "v"]);
    assert_eq!(code(&out), 0);
    assert_eq!(fs::read_to_string(dir.path().join("v/vesting.csv")).unwrap().lines().count(), 25);
    assert!(dir.path().join("v/vesting.svg").is_file());

    let out = depin(dir.path(), &["reference"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("simulation.nodes.patience"));
}
