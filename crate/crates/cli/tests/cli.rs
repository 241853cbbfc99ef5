use std::process::{Command, Output};

use serde_json::Value;

fn supvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supvar")).args(args).output().expect("binary runs")
}

fn doc(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn classify_enumerates_nine_points() {
    let out =
        supvar(&["hom", "classify", "--family", "Mrs", "--r", "1", "--s", "2", "--p", "3", "--q", "3", "--enumerate"]);
    assert_eq!(out.status.code(), Some(0));
    let d = doc(&out);
    assert_eq!(d["command"], "hom classify");
    assert_eq!(d["field"]["modulus"], serde_json::json!([0, 1]));
    assert_eq!(d["result"]["params"].as_array().unwrap().len(), 9);
    assert!(d["anchor"].as_str().is_some_and(|s| !s.is_empty()));
}

#[test]
fn restriction_of_w() {
    let out = supvar(&[
        "cohomology",
        "restrict",
        "--family",
        "Mrs",
        "--r",
        "1",
        "--s",
        "2",
        "--p",
        "3",
        "--params",
        "1,1,1",
        "--class",
        "w",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let d = doc(&out);
    assert_eq!(d["status"], "pass");
    assert_eq!(d["result"], serde_json::json!({"w": 1, "x1": 1}));
}

#[test]
fn compare_regular_module() {
    let out = supvar(&[
        "support",
        "compare",
        "--family",
        "Mrs",
        "--s",
        "2",
        "--p",
        "3",
        "--q",
        "3",
        "--module",
        "battery:regular",
        "--degree-cap",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let d = doc(&out);
    assert_eq!(d["status"], "pass");
    assert_eq!(d["result"]["psi_image"], serde_json::json!([[0, 0, 0]]));
}

#[test]
fn json_out_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = supvar(&["hopf", "verify", "--family", "gaminus", "--json-out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
}

#[test]
fn invalid_input_exits_3() {
    // p = 2 is rejected
    let out = supvar(&["hopf", "verify", "--p", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(doc(&out)["status"], "error");
    // q not a power of p
    assert_eq!(supvar(&["hopf", "verify", "--q", "25"]).status.code(), Some(3));
    // η ≠ 0 needs r ≥ 2
    assert_eq!(supvar(&["hopf", "verify", "--family", "mrseta", "--eta", "1"]).status.code(), Some(3));
    assert_eq!(supvar(&["hom", "frobnicate"]).status.code(), Some(3));
    assert_eq!(supvar(&["support", "compare", "--module", "battery:nope"]).status.code(), Some(3));
}

#[test]
fn tiny_budget_exits_2() {
    let out = supvar(&["hom", "oracle", "--family", "mrs", "--r", "2", "--s", "2", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_exits_0() {
    assert_eq!(supvar(&["--help"]).status.code(), Some(0));
}

#[test]
fn tuple_random_is_valid() {
    let out = supvar(&["tuple", "random", "--m", "2", "--n", "1", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let d = doc(&out);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    std::fs::write(&path, serde_json::to_vec(&d["result"]).unwrap()).unwrap();
    let v = supvar(&["tuple", "validate", "--module", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "{}", String::from_utf8_lossy(&v.stdout));
    assert_eq!(doc(&v)["status"], "pass");
}
