use std::process::Command;

use drinfeld_cover::cli::run;
use serde_json::json;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_drinfeld-cover"))
}

fn args(s: &str) -> Vec<String> {
    std::iter::once("drinfeld-cover".to_string()).chain(s.split_whitespace().map(String::from)).collect()
}

#[test]
fn pi0_for_q3_d1() {
    let (code, value) = run(args("pi0 --p 3 --f 1 --e 1 --d 1"));
    assert_eq!(code, 0);
    assert_eq!(value, json!({ "pi0_over_C": "2", "pi0_over_K_breve": "1" }));
}

#[test]
fn hyperplanes_level_two() {
    let (code, value) = run(args("hyperplanes --p 2 --f 1 --e 1 --d 1 --level 2"));
    assert_eq!(code, 0);
    assert_eq!(value["count"], "6");
    assert_eq!(value["classes"].as_array().unwrap().len(), 6);
}

#[test]
fn generic_fiber_congruence_q2_d2() {
    let (code, value) = run(args("verify-lemeqsigsig --p 2 --f 1 --e 1 --d 2"));
    assert_eq!(code, 0);
    assert_eq!(value["ok"], true);
}

#[test]
fn every_command_succeeds() {
    for cmd in [
        "hyperplanes --p 3 --d 2",
        "simplex --p 2 --d 2",
        "simplex --p 2 --d 2 --type 1,2",
        "xpid --p 3 --d 1",
        "kummer-class --p 3 --d 1",
        "invariants --p 2 --f 2 --d 1",
        "vertex-consistency --p 3 --d 2",
        "norm-lemma --p 3 --d 1 --samples 10",
        "idempotents --p 5 --d 1",
    ] {
        let (code, value) = run(args(cmd));
        assert_eq!(code, 0, "{cmd}: {value}");
    }
}

#[test]
fn kummer_class_json_shape() {
    let (_, value) = run(args("kummer-class --p 3 --d 1"));
    assert_eq!(value["modulus"], "8");
    assert_eq!(value["pi_exponent"], "1");
    let coeffs = value["coefficients"].as_array().unwrap();
    assert_eq!(coeffs.len(), 4);
    assert!(coeffs.iter().all(|c| c[1] == "2"));
}

#[test]
fn invalid_parameters_exit_two() {
    assert_eq!(run(args("pi0 --p 4 --d 1")).0, 2);
    assert_eq!(run(args("hyperplanes --p 3 --e 2 --level 3")).0, 2);
    assert_eq!(run(args("simplex --p 2 --d 2 --type 2,2")).0, 2);
    assert_eq!(run(args("xpid --p 2 --d 0")).0, 2);
    assert_eq!(run(args("no-such-command")).0, 2);
}

#[test]
fn binary_output_is_deterministic() {
    let once = bin().args(args("norm-lemma --p 2 --d 1 --seed 3 --samples 5").iter().skip(1)).output().unwrap();
    let twice = bin().args(args("norm-lemma --p 2 --d 1 --seed 3 --samples 5").iter().skip(1)).output().unwrap();
    assert_eq!(once.status.code(), Some(0));
    assert_eq!(once.stdout, twice.stdout);
    assert!(!once.stdout.is_empty());
}

#[test]
fn binary_exit_codes_and_out_file() {
    let dir = std::env::temp_dir().join(format!("drinfeld-cover-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pi0.json");
    let status =
        bin().args(["pi0", "--p", "3", "--d", "1", "--out", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(status.status.code(), Some(0));
    assert!(status.stdout.is_empty());
    let written: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["pi0_over_C"], "2");
    std::fs::remove_dir_all(&dir).unwrap();

    let bad = bin().args(["pi0", "--p", "6"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
