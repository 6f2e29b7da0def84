use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn esr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_esr"))
        .args(args)
        .env_remove("ESR_SEED")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("esr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn catalog_lists_every_entry() {
    let out = esr(&["catalog"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["oct3", "icosa", "c9", "torus7", "torus9", "c3", "simplex2"] {
        assert!(text.contains(name), "{name} missing");
    }
}

#[test]
fn catalog_entry_as_json() {
    let out = esr(&["--json", "catalog", "--name", "c9"]);
    assert!(out.status.success());
    assert!(json_of(&out).to_string().contains("\"c9\""));
}

#[test]
fn info_reads_complex_and_action_files() {
    let k = scratch(
        "hexagon.json",
        r#"{"n":6,"facets":[[1,2],[2,3],[3,4],[4,5],[5,6],[1,6]]}"#,
    );
    let a = scratch("half-turn.json", r#"{"p":2,"perm":[4,5,6,1,2,3]}"#);
    let out = esr(&[
        "--json",
        "info",
        k.to_str().unwrap(),
        "--action",
        a.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json_of(&out);
    assert_eq!(v["h_vector"], serde_json::json!([1, 4, 1]));
    assert!(v.to_string().contains("\"free\":true"));
}

#[test]
fn artinian_table_for_nine_gon() {
    let out = esr(&["--json", "artinian", "--name", "c9", "--m", "0"]);
    assert!(out.status.success());
    assert_eq!(
        json_of(&out)["artinian"]["dims"],
        serde_json::json!([[1, 0, 0], [1, 3, 3], [1, 0, 0]])
    );
}

#[test]
fn saved_lsop_replays() {
    let dir = std::env::temp_dir().join(format!("esr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("oct3-lsop.json");
    let p = path.to_str().unwrap();
    let first = esr(&[
        "--json",
        "artinian",
        "--name",
        "oct3",
        "--seed",
        "5",
        "--save-lsop",
        p,
    ]);
    assert!(first.status.success());
    let again = esr(&["--json", "artinian", "--name", "oct3", "--lsop", p]);
    assert!(again.status.success());
    assert_eq!(json_of(&first)["artinian"], json_of(&again)["artinian"]);
}

#[test]
fn verify_exits_zero_without_failures() {
    let out = esr(&["verify", "--suite", "misc", "--name", "c3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("0 fail"));
}

#[test]
fn seed_comes_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_esr"))
        .args(["--json", "verify", "--suite", "misc", "--name", "c3"])
        .env("ESR_SEED", "17")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(json_of(&out)["seed"], 17);
}

#[test]
fn errors_exit_two_with_a_code() {
    let out = esr(&["--json", "betti", "--name", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json_of(&out)["error"].is_string());

    let bad = scratch("not-prime.json", r#"{"p":4,"perm":[2,3,4,1]}"#);
    let k = scratch(
        "square.json",
        r#"{"n":4,"facets":[[1,2],[2,3],[3,4],[1,4]]}"#,
    );
    let out = esr(&[
        "info",
        k.to_str().unwrap(),
        "--action",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn unknown_suite_is_rejected() {
    let out = esr(&["verify", "--suite", "everything"]);
    assert_eq!(out.status.code(), Some(2));
}
