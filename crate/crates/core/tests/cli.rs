use std::fs;
use std::path::PathBuf;
use std::process::Command;

use genarc::cli::{run_with, EXIT_BUDGET, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};

fn run(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("genarc").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("genarc-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn bound_tables_reproduce() {
    let (code, out, _) = run(&["table6", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("q,ceil_t1,ceil_t1_printed,ceil_t1_status,ceil_t2,"));
    assert_eq!(out.lines().count(), 10);
    assert!(!out.contains("mismatch"));
    let (code, out, _) = run(&["table3"]);
    assert_eq!(code, EXIT_OK, "{out}");
}

#[test]
fn known_discrepancy_is_flagged_without_failing() {
    let (code, out, _) = run(&["table4", "--q", "8"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("5 ~6"), "{out}");
    let (_, csv, _) = run(&["table4", "--q", "8", "--format", "csv"]);
    assert!(csv.contains(",5,6,known-discrepancy,"), "{csv}");
}

#[test]
fn table_output_is_byte_stable() {
    let a = run(&["table2", "--format", "json"]);
    let b = run(&["table2", "--format", "json"]);
    assert_eq!(a.0, EXIT_OK);
    assert_eq!(a.1, b.1);
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["table1", "--bogus"]).0, EXIT_USAGE);
    assert_eq!(run(&["bounds", "--q", "6"]).0, EXIT_USAGE);
    assert_eq!(run(&["bounds"]).0, EXIT_USAGE);
    assert_eq!(run(&["search", "--q", "16", "--kind", "arc", "--mode", "max"]).0, EXIT_USAGE);
    assert_eq!(run(&["search", "--q", "5", "--kind", "conic", "--mode", "max"]).0, EXIT_USAGE);
    assert_eq!(run(&["table1", "--q", "16"]).0, EXIT_USAGE);
    assert_eq!(run(&["--help"]).0, EXIT_OK);
}

#[test]
fn budget_exhaustion() {
    let (code, out, _) = run(&["search", "--q", "9", "--kind", "generalized", "--mode", "max", "--node-budget", "20", "--format", "csv"]);
    assert_eq!(code, EXIT_BUDGET);
    assert!(out.contains(",false,"));
    let (code, out, _) = run(&["table1", "--q", "9", "--node-budget", "20"]);
    assert_eq!(code, EXIT_BUDGET, "{out}");
}

#[test]
fn search_certificates_round_trip() {
    let dir = scratch("roundtrip");
    let d = dir.to_str().unwrap();
    let (code, _, err) = run(&["search", "--q", "5", "--kind", "v", "--mode", "min-complete", "--certs", d]);
    assert_eq!(code, EXIT_OK);
    assert!(err.contains("wrote"));
    let (code, _, _) = run(&["table5", "--q", "5,7", "--certs", d]);
    assert_eq!(code, EXIT_OK);
    let files: Vec<String> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path().to_str().unwrap().to_string())
        .collect();
    assert_eq!(files.len(), 3);
    let mut args = vec!["verify"];
    args.extend(files.iter().map(String::as_str));
    let (code, out, _) = run(&args);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn tampered_certificates_fail() {
    let dir = scratch("tamper");
    let path = dir.join("bad.json");
    let (_, json, _) = run(&["search", "--q", "4", "--kind", "arc", "--mode", "max", "--format", "json"]);
    fs::write(&path, json.replacen("\"[1:0:0]\"", "\"[1:0:1]\"", 1)).unwrap();
    let (code, out, _) = run(&["verify", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, EXIT_MISMATCH, "{out}");
    fs::write(&path, "not json").unwrap();
    assert_eq!(run(&["verify", path.to_str().unwrap()]).0, EXIT_MISMATCH);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = scratch("out");
    let path = dir.join("bounds.csv");
    let (code, out, _) = run(&["bounds", "--q-range", "13..31", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("q,ball_sqrt2,ball_sqrt3,t_prop,"));
    assert_eq!(text.lines().count(), 10);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_genarc");
    let ok = Command::new(bin).args(["table6", "--q", "13"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(["table6", "--q", "12"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
