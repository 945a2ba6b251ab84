use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn workspace() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffmoduli"))
        .current_dir(workspace())
        .args(args)
        .output()
        .expect("binary runs")
}

fn artifact(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), v)
}

#[test]
fn circle_exact_matches_count() {
    let (code, v) = artifact(&["circle-exact", "--config", "configs/quadric_q3.json", "--e", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["N_count"], "1");
    assert_eq!(v["N_integral"], "1");
    assert_eq!(v["match"], true);
    assert_eq!(v["schema"], "ffmoduli/1");
    assert_eq!(v["params"]["q"], 3);
}

#[test]
fn smallchar_degree() {
    let (code, v) = artifact(&["smallchar", "--e", "1", "--p", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["d"], 7);
    assert_eq!(v["F_next_vanishes"], true);
}

#[test]
fn count_n_for_the_product_form() {
    let (code, v) = artifact(&["count-n", "--config", "configs/product_q3.json"]);
    assert_eq!(code, 0);
    assert_eq!(v["N"], "53");
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["count-n"]).status.code(), Some(2));
    assert_eq!(
        run(&["count-n", "--config", "configs/quadric_q3.json", "--budget-box", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn budget_overrun_is_an_input_error() {
    let out = run(&["count-n", "--config", "configs/hyperbolic/hyperbolic_q5.json", "--budget-box", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = ["approx", "--p", "5", "--m", "2", "--samples", "30", "--seed", "11"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let other = run(&["approx", "--p", "5", "--m", "2", "--samples", "30", "--seed", "12"]);
    assert_eq!(serde_json::from_slice::<Value>(&other.stdout).unwrap()["seed"], 12);
}

#[test]
fn out_flag_writes_the_file() {
    let path = std::env::temp_dir().join(format!("ffmoduli-out-{}.json", std::process::id()));
    let out = run(&["smallchar", "--p", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "smallchar");
    std::fs::remove_file(path).ok();
}
