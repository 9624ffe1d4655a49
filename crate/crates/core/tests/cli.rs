use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("subdesign-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subdesign")).args(args).output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn design_f3_report() {
    let o = run(&["design", "f3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["A_weak"], 3);
    assert_eq!(v["exhaustive"], true);
    assert_eq!(v["subspaces_checked"], 130);
}

#[test]
fn zero_profile_threshold_is_one() {
    let p = scratch("zero.json", r#"{"q": 3, "b": 2, "n": 3, "subspaces": [[], [], []]}"#);
    let o = run(&["profile", "threshold", "--profile", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["R_V"], "1");
}

#[test]
fn mr_exit_codes() {
    let base = ["mr", "independent", "--m", "2", "--n", "2", "--a", "1", "--b", "1"];
    let o = run(&[&base[..], &["--cells", ""]].concat());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["decision"], "INDEPENDENT");
    let o = run(&[&base[..], &["--mode", "reduced", "--minimal", "--cells", "1,1;1,2;2,1;2,2"]].concat());
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["decision"], "DEPENDENT");
    let o = run(&[&base[..], &["--cells", "3,1"]].concat());
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn guard_refusal_exits_two() {
    let o = run(&["--guard-subspaces", "10", "design", "gk", "--q", "11", "--k", "3", "--s", "2", "--n", "2", "--ell", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["status"], "guard-exceeded");
}

#[test]
fn parse_errors_carry_locations() {
    let p = scratch("bad.json", r#"{"q": 3, "b": 2, "n": 2, "subspaces": [[[1, 0]], [[1, "x"]]]}"#);
    let o = run(&["profile", "threshold", "--profile", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("subspaces[1]"), "{err}");
    let p = scratch("typo.json", r#"{"q": 3, "b": 2, "n": 2, "subspace": []}"#);
    let o = run(&["profile", "threshold", "--profile", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("subspace"));
    assert_eq!(run(&["design", "nonsense"]).status.code(), Some(3));
}

#[test]
fn randomized_runs_are_reproducible() {
    let p = scratch("weight.json", r#"{"q": 5, "b": 1, "n": 4, "subspaces": [[[1]], [[1]], [], []]}"#);
    let args = ["--seed", "17", "profile", "montecarlo", "--profile", p.to_str().unwrap(), "--k", "3", "--trials", "40", "--exclude-trivial"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["trials"], 40);
    let w = run(&["--seed", "3", "wronskian", "check", "--q", "11", "--instances", "30"]);
    assert_eq!(w.stdout, run(&["--seed", "3", "wronskian", "check", "--q", "11", "--instances", "30"]).stdout);
}

#[test]
fn manifest_records_the_digest() {
    let m = scratch("manifest.json", "");
    let o = run(&["--manifest", m.to_str().unwrap(), "design", "f3"]);
    assert_eq!(o.status.code(), Some(0));
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(&m).unwrap()).unwrap();
    let digest = format!("{:x}", Sha256::digest(&o.stdout));
    let text = manifest.to_string();
    assert!(text.contains(&digest), "{text}");
    assert!(text.contains("design f3"));
}

#[test]
fn table_output() {
    let o = run(&["--output", "table", "design", "f3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = String::from_utf8_lossy(&o.stdout);
    assert!(s.contains("A_weak") && !s.trim_start().starts_with('{'));
}
