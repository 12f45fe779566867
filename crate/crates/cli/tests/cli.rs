use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minuscule")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["admissible", "check", "gl", "--n", "4"]), 0);
    assert_eq!(code(&["admissible", "check", "sp", "--n", "2"]), 1);
    assert_eq!(code(&["admissible", "check", "nonsense"]), 2);
    assert_eq!(code(&["rep", "dim", "gl", "--lambda", "1,2"]), 2);
    assert_eq!(code(&["semigroup", "levels", "gl"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn malformed_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(code(&["admissible", "check", "--file", path.to_str().unwrap(), "--gamma", "1,0"]), 2);
}

#[test]
fn json_is_deterministic() {
    for args in [
        vec!["semigroup", "basis", "gsp", "--n", "2", "--json"],
        vec!["rep", "tensor", "gspin", "--n", "2", "--json"],
        vec!["strata", "dims", "gsp", "--levi", "1", "--json"],
        vec!["reproduce", "--only", "gl", "--json"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn rep_results() {
    let v = json(&["rep", "dim", "gsp", "--n", "3", "--json"]);
    assert_eq!(v["result"]["dim"], "8");
    let v = json(&["rep", "wedge", "gspin", "--n", "2", "--k", "2", "--json"]);
    let names: Vec<&str> =
        v["result"]["summands"].as_array().unwrap().iter().map(|s| s["highest_weight"]["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["gamma2", "omega"]);
}

#[test]
fn built_datum_round_trips_through_a_file() {
    let v = json(&["build", "--type", "C", "--n", "2", "--gamma-h", "2", "--json"]);
    let result = &v["result"];
    let gamma: Vec<String> = result["gamma"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gsp4.json");
    std::fs::write(&path, serde_json::to_string(&result["datum"]).unwrap()).unwrap();
    let checked = json(&["admissible", "check", "--file", path.to_str().unwrap(), "--gamma", &gamma.join(","), "--json"]);
    assert_eq!(checked["passed"], true);
    assert_eq!(checked["datum"]["fingerprint"], v["datum"]["fingerprint"]);
}

#[test]
fn reproduce_passes() {
    let v = json(&["reproduce", "--json"]);
    assert_eq!(v["passed"], true);
}
