//! End-to-end tests of the command line interface: exit codes, the JSON
//! report schema, explicit vacuous-case reporting, and byte-level
//! determinism of reports (timing excluded).

use std::process::{Command, Output};

fn daha(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_daha")).args(args).output().expect("binary runs")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

/// Parses a JSON report array and zeroes the timing field everywhere.
fn parsed_without_timing(text: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(text).expect("valid JSON");
    for suite in v.as_array_mut().expect("array of suite reports") {
        suite["timing_ms"] = serde_json::json!(0);
    }
    v
}

#[test]
fn rank_one_relations_json_passes() {
    let out = daha(&[
        "verify", "--family", "A", "--rank", "1", "--twist", "untwisted", "--suites", "relations",
        "--format", "json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v = parsed_without_timing(&stdout(&out));
    let suites = v.as_array().unwrap();
    assert_eq!(suites.len(), 1);
    let suite = &suites[0];
    assert_eq!(suite["suite"], "relations");
    assert_eq!(suite["spec"]["family"], "A");
    assert_eq!(suite["spec"]["rank"], 1);
    assert_eq!(suite["spec"]["twist"], "untwisted");
    assert!(suite["seed"].is_u64());
    let cases = suite["cases"].as_array().unwrap();
    assert!(!cases.is_empty());
    for c in cases {
        assert!(c["id"].is_string());
        assert!(c["relation"].is_string());
        assert!(c["params"].is_string());
        assert_ne!(c["status"], "fail", "case {} failed: {:?}", c["id"], c["witness"]);
    }
    // The infinite rank-one braid order is reported as vacuous, not dropped.
    assert!(cases.iter().any(|c| c["status"] == "vacuous" && c["relation"] == "braid"));
}

#[test]
fn trivial_omega_reported_vacuous() {
    let out = daha(&[
        "verify", "--family", "G", "--rank", "2", "--twist", "twisted", "--suites", "omega",
        "--format", "json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v = parsed_without_timing(&stdout(&out));
    let cases = v[0]["cases"].as_array().unwrap();
    let descent = cases.iter().find(|c| c["id"] == "omega-descent").unwrap();
    assert_eq!(descent["status"], "vacuous");
    assert!(descent["witness"].as_str().unwrap().contains("trivial"));
}

#[test]
fn b2_triangularity_passes_with_flags() {
    let out = daha(&[
        "verify", "--family", "B", "--rank", "2", "--suites", "triangularity", "--max-length", "4",
        "--format", "json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v = parsed_without_timing(&stdout(&out));
    let cases = v[0]["cases"].as_array().unwrap();
    assert!(cases.iter().any(|c| c["relation"] == "triangular-expansion"));
    assert!(cases.iter().any(|c| c["relation"] == "triangular-inversion"));
    assert!(cases.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn reports_are_deterministic_for_fixed_seed() {
    let args = [
        "verify", "--family", "C", "--rank", "2", "--twist", "twisted", "--suites",
        "relations,omega", "--seed", "7", "--specialize-check", "--format", "json",
    ];
    let a = daha(&args);
    let b = daha(&args);
    assert_eq!(exit_code(&a), 0);
    assert_eq!(exit_code(&b), 0);
    let va = parsed_without_timing(&stdout(&a));
    let vb = parsed_without_timing(&stdout(&b));
    assert_eq!(
        serde_json::to_string(&va).unwrap(),
        serde_json::to_string(&vb).unwrap(),
        "reports must be byte-identical modulo timing"
    );
}

#[test]
fn text_and_json_describe_identical_case_sets() {
    let base = [
        "verify", "--family", "A", "--rank", "2", "--suites", "omega,parabolic", "--seed", "3",
    ];
    let json = daha(&[&base[..], &["--format", "json"]].concat());
    let text = daha(&[&base[..], &["--format", "text"]].concat());
    assert_eq!(exit_code(&json), 0);
    assert_eq!(exit_code(&text), 0);
    let v = parsed_without_timing(&stdout(&json));
    let mut json_ids: Vec<String> = Vec::new();
    for suite in v.as_array().unwrap() {
        for c in suite["cases"].as_array().unwrap() {
            json_ids.push(c["id"].as_str().unwrap().to_string());
        }
    }
    let text_out = stdout(&text);
    for id in &json_ids {
        assert!(text_out.contains(id.as_str()), "text output missing case {}", id);
    }
    let text_case_lines = text_out.lines().filter(|l| l.trim_start().starts_with('[')).count();
    assert_eq!(text_case_lines, json_ids.len());
}

#[test]
fn usage_errors_exit_two() {
    // Unknown family.
    let out = daha(&["verify", "--family", "Z", "--rank", "2"]);
    assert_eq!(exit_code(&out), 2);
    // Inadmissible rank for the family.
    let out = daha(&["verify", "--family", "B", "--rank", "1"]);
    assert_eq!(exit_code(&out), 2);
    // Unknown suite name.
    let out = daha(&["verify", "--family", "A", "--rank", "1", "--suites", "bogus"]);
    assert_eq!(exit_code(&out), 2);
    // Unknown flag (argument parser error).
    let out = daha(&["verify", "--family", "A", "--rank", "1", "--no-such-flag"]);
    assert_eq!(exit_code(&out), 2);
    // Zero level.
    let out = daha(&["verify", "--family", "A", "--rank", "1", "--level", "0"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn full_default_run_rank_one() {
    let out = daha(&["verify", "--family", "A", "--rank", "1", "--format", "text"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    for suite in ["relations", "triangularity", "pbw", "polynomial", "parabolic", "omega"] {
        assert!(text.contains(&format!("suite {} ", suite)), "missing suite {}", suite);
    }
    assert!(text.contains("total:"));
    assert!(text.contains("0 fail"));
}
