//! End-to-end checks of the `mating` binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mating")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn count_and_enumerate_agree() {
    let count = stdout(&["count", "--family", "tandem", "--length", "9"]);
    assert_eq!(count.trim(), "42");
    let listed = stdout(&["enumerate", "--family", "tandem", "--length", "9"]);
    assert_eq!(listed.lines().count(), 42);
}

#[test]
fn verify_reports_formula_agreement() {
    let csv = stdout(&["verify", "--family", "kreweras", "--n", "2", "--format", "csv"]);
    assert!(csv.lines().any(|l| l == "kreweras,2,16,12,16,16,B;image"), "{csv}");
}

#[test]
fn map_files_round_trip_through_the_binary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tree.map");
    let p = path.to_str().unwrap();
    let walk = "(0,1);(0,1);(1,-1);(-1,-1)";
    stdout(&["forward", "--bijection", "ry", "--walk", walk, "--out", p]);
    stdout(&["verify", "--bijection", "ry", "--in", p]);
    let back = stdout(&["inverse", "--bijection", "ry", "--in", p]);
    assert_eq!(back.trim(), walk);
}

#[test]
fn bad_input_exits_with_an_error() {
    let out = run(&["mate", "--family", "kreweras", "--walk", "abx"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    let out = run(&["inverse", "--bijection", "ry", "--in", "/nonexistent/file.map"]);
    assert!(!out.status.success());
}

#[test]
fn renderers_produce_documents() {
    let svg = stdout(&["render", "--family", "kreweras", "--walk", "aabbccbac", "--format", "svg"]);
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    let dot = stdout(&["forward", "--bijection", "kreweras", "--walk", "aabbccbac", "--format", "dot"]);
    assert!(dot.starts_with("digraph") || dot.starts_with("graph"), "{dot}");
}
