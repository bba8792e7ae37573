//! End-to-end tests of the command-line interface: exit codes, output
//! shapes and the documented JSON schema.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(format!(
        "{}/../../fixtures/{name}",
        env!("CARGO_MANIFEST_DIR")
    ))
}

fn mvreasons(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvreasons"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn validate_accepts_the_disease_graph() {
    let out = mvreasons(&["validate", fixture("disease.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("weak test-once property holds"));
}

#[test]
fn validate_accepts_repeated_numeric_tests() {
    let out = mvreasons(&["validate", fixture("bmi.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn validate_rejects_broken_partitions_with_a_path() {
    let out = mvreasons(&["validate", fixture("bad_partition.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("violation"));
    assert!(text.contains("path 0 → 1 → 2"));
    assert!(text.contains("Weight"));
}

#[test]
fn explain_prints_the_gnrs_of_the_disease_graph() {
    let out = mvreasons(&[
        "explain",
        fixture("disease.json").to_str().unwrap(),
        "--instance",
        fixture("patient.json").to_str().unwrap(),
        "--kind",
        "gnr",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("decision: yes"));
    assert!(text.contains("Age = >=55"));
    assert!(text.contains("Weight = Overweight ∨ BType ∈ {A, B, AB}"));
    assert!(text.contains("Weight ∈ {Underweight, Overweight} ∨ BType ∈ {A, B}"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn explain_prints_the_gsrs_of_the_alternative_graph() {
    let out = mvreasons(&[
        "explain",
        fixture("disease_alt.json").to_str().unwrap(),
        "--instance",
        fixture("patient.json").to_str().unwrap(),
        "--kind",
        "gsr",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("Age = >=55 ∧ BType ∈ {A, O}"));
    assert!(text.contains("Age = >=55 ∧ Weight ∈ {Normal, Overweight}"));
}

#[test]
fn explain_with_inline_sets_and_oracle_check() {
    let out = mvreasons(&[
        "explain",
        fixture("bmi.json").to_str().unwrap(),
        "--set",
        "Age=[40,inf)",
        "--set",
        "BMI=[27,30)",
        "--kind",
        "all",
        "--check",
    ]);
    assert_eq!(out.status.code(), Some(0), "oracle must agree");
    let text = stdout(&out);
    assert!(text.contains("decision: yes"));
    assert!(text.contains("general necessary reasons"));
}

#[test]
fn explain_emits_valid_json() {
    let out = mvreasons(&[
        "explain",
        fixture("disease.json").to_str().unwrap(),
        "--instance",
        fixture("patient.json").to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(value["decision"], "yes");
    assert_eq!(value["sufficient_reasons"].as_array().unwrap().len(), 2);
    assert_eq!(
        value["general_necessary_reasons"].as_array().unwrap().len(),
        3
    );
    assert_eq!(value["instance"]["Age"], ">=55");
}

#[test]
fn explain_rejects_unknown_states_as_usage_errors() {
    let out = mvreasons(&[
        "explain",
        fixture("disease.json").to_str().unwrap(),
        "--set",
        "Age=ninety",
        "--set",
        "BType=A",
        "--set",
        "Weight=Normal",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn explain_requires_a_total_instance() {
    let out = mvreasons(&[
        "explain",
        fixture("disease.json").to_str().unwrap(),
        "--set",
        "Age=>=55",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn capacity_errors_exit_with_code_3() {
    // the graph pipeline itself is algebraic and needs no enumeration;
    // the oracle cross-check does, so a tiny budget must trip it
    let out = Command::new(env!("CARGO_BIN_EXE_mvreasons"))
        .args([
            "explain",
            fixture("disease.json").to_str().unwrap(),
            "--instance",
            fixture("patient.json").to_str().unwrap(),
            "--check",
        ])
        .env("MVREASONS_WORLD_BUDGET", "3")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn check_runs_all_instances_of_small_graphs() {
    let out = mvreasons(&[
        "check",
        fixture("three_class.json").to_str().unwrap(),
        "--samples",
        "27",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("checked 27 instances, 0 failures"));
}

#[test]
fn check_covers_every_disease_instance() {
    let out = mvreasons(&[
        "check",
        fixture("disease.json").to_str().unwrap(),
        "--samples",
        "24",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("checked 24 instances, 0 failures"));
}

#[test]
fn check_is_deterministic_under_a_seed() {
    let path = fixture("disease.json");
    let args = [
        "check",
        path.to_str().unwrap(),
        "--samples",
        "5",
        "--seed",
        "11",
    ];
    let a = mvreasons(&args);
    let b = mvreasons(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn check_rejects_invalid_graphs() {
    let out = mvreasons(&[
        "check",
        fixture("bad_partition.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_with_code_2() {
    let out = mvreasons(&["explain"]);
    assert_eq!(out.status.code(), Some(2));
    let out = mvreasons(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}
