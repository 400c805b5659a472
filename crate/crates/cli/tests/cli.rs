use std::process::{Command, Output};

use serde_json::Value;

fn bireg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bireg")).args(args).env_remove("BIREG_CACHE_DIR").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn coeff_examples() {
    assert_eq!(stdout(&bireg(&["coeff", "3", "7", "0"])).trim(), "1");
    assert_eq!(stdout(&bireg(&["coeff", "3", "7", "2"])).trim(), "5");
    assert_eq!(stdout(&bireg(&["coeff", "3", "7", "5", "--mod", "7"])).trim(), "3");
    assert_eq!(stdout(&bireg(&["regular", "17", "5"])).trim(), "7");
}

#[test]
fn exact_cap_is_an_explicit_error() {
    let o = bireg(&["coeff", "3", "7", "100000"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exact counts are limited"));
    let o = bireg(&["coeff", "3", "7", "100000", "--mod", "7"]);
    assert!(o.status.success());
}

#[test]
fn family_filter_passes() {
    let o = bireg(&["verify", "--suite", "families", "--family", "x1", "--n-max", "100"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("pass"));
    assert!(out.contains("families: 1 cases, 1 passed, 0 failed"));
}

#[test]
fn chain_report_lists_stages() {
    let o = bireg(&["verify", "--suite", "chains", "--chain", "s8"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("chains/s8"));
    assert!(out.lines().filter(|l| l.trim_start().starts_with('[')).count() > 5);
}

#[test]
fn identities_json_round_trips() {
    let o = bireg(&["verify", "--suite", "identities", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["suite"], "identities");
    let cases = v["cases"].as_array().unwrap();
    assert!(cases.len() >= 14);
    let passed = cases.iter().filter(|c| c["status"] == "pass").count();
    assert_eq!(v["summary"]["total"], cases.len());
    assert_eq!(v["summary"]["passed"], passed);
    assert_eq!(v["summary"]["failed"], 0);
    for c in cases {
        assert!(c["id"].is_string() && c["runtime_ms"].is_u64());
    }
}

#[test]
fn failures_set_the_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("extra.txt");
    std::fs::write(&file, "wrong test exact 20 (f 1) (f 2)\n").unwrap();
    let o = bireg(&["verify", "--case", "wrong", "--file", file.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("suite,id,status"));
    assert!(out.contains("identities,wrong,mismatch"));
}

#[test]
fn config_errors_exit_nonzero() {
    assert_eq!(bireg(&["verify", "--suite", "everything"]).status.code(), Some(2));
    assert_eq!(bireg(&["verify", "--chain", "nope"]).status.code(), Some(2));
    assert_eq!(bireg(&["verify", "--order", "0"]).status.code(), Some(2));
}

#[test]
fn report_file_and_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let cache = dir.path().join("cache");
    let o = Command::new(env!("CARGO_BIN_EXE_bireg"))
        .args(["verify", "--family", "w.11", "--n-max", "200", "--format", "json", "--output"])
        .arg(&report)
        .env("BIREG_CACHE_DIR", &cache)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["cases"][0]["id"], "w.11");
    assert_eq!(v["cases"][0]["params"][0], "m=0,k=0");
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 1);
}

#[test]
fn expand_prints_coefficients() {
    let o = bireg(&["expand", "(^ (f 1) -1)", "--order", "6"]);
    assert_eq!(stdout(&o).trim(), "1 1 2 3 5 7 11");
}
