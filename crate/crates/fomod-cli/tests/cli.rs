use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn fomod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fomod")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fomod-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn reruns_are_byte_identical() {
    let point = data("silverman_point.json");
    let args = ["descend", "--point", point.to_str().unwrap()];
    let a = fomod(&args);
    let b = fomod(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn invariants_feed_descend() {
    let dir = scratch("z3");
    let inv = fomod(&["invariants", "--degree", "3", "--map", data("z3.json").to_str().unwrap()]);
    assert!(inv.status.success());
    let point = dir.join("point.json");
    std::fs::write(&point, &inv.stdout).unwrap();
    let out = fomod(&["descend", "--point", point.to_str().unwrap()]);
    let v = json(&out);
    assert_eq!(v["outcome"], "model", "{v}");
    assert_eq!(v["schema"], 1);
    // the model's map file is itself valid input, with the same invariants
    let model = dir.join("model.json");
    std::fs::write(&model, v["model"]["map"].to_string()).unwrap();
    let again = fomod(&["invariants", "--degree", "3", "--map", model.to_str().unwrap()]);
    std::fs::write(dir.join("again.json"), &again.stdout).unwrap();
    let eq = fomod(&["equivalent", "--first", point.to_str().unwrap(), "--second", dir.join("again.json").to_str().unwrap()]);
    assert_eq!(json(&eq)["equivalent"], true);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes_and_error_objects() {
    let missing = fomod(&["classify", "--point", "/nonexistent/point.json"]);
    assert_eq!(missing.status.code(), Some(2));
    assert_eq!(json(&missing)["error"], "Io");

    let dir = scratch("errors");
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"schema":1,"field":"Q","coords":["1","2","3"]}"#).unwrap();
    let out = fomod(&["validate", "--point", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "Schema");

    let zero = dir.join("zero.json");
    std::fs::write(&zero, r#"{"schema":1,"field":"Q","coords":[0,0,0,0,0,0]}"#).unwrap();
    let out = fomod(&["validate", "--point", zero.to_str().unwrap()]);
    assert!(out.status.success());
    assert_ne!(json(&out)["status"], "Ok");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn selftest_passes() {
    let out = fomod(&["selftest", "--trials", "5"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["passed"], true);
}
