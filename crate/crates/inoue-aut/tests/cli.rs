//! End-to-end tests of the command-line interface: exit codes, JSON
//! shape and canonical round-tripping, and the dual-graph emitter.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_inoue-aut"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&output.stdout).into_owned(),
        String::from_utf8_lossy(&output.stderr).into_owned(),
    )
}

#[test]
fn verify_passes_and_exits_zero() {
    let (code, stdout, _) = run(&["verify", "--m", "4"]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("all"));
    assert!(stdout.contains("result: S(4, alpha)"));
    assert!(!stdout.contains("FAIL"));
}

#[test]
fn verify_range_runs_every_point() {
    let (code, stdout, _) = run(&["verify", "--m-range", "1..3"]);
    assert_eq!(code, 0);
    for m in 1..=3 {
        assert!(stdout.contains(&format!("m={m}: ")), "missing m={m}");
    }
    // Deterministic ordering by parameter.
    let p1 = stdout.find("m=1:").unwrap();
    let p2 = stdout.find("m=2:").unwrap();
    let p3 = stdout.find("m=3:").unwrap();
    assert!(p1 < p2 && p2 < p3);
}

#[test]
fn quotient_json_has_schema_and_round_trips() {
    let (code, stdout, _) = run(&[
        "quotient", "--m", "6", "--kind", "mixed", "--l", "2", "--j", "1", "--json",
    ]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    assert_eq!(value["schema"], 1);
    assert_eq!(value["command"], "quotient");
    assert_eq!(value["result_label"], "S(3, alpha^2)");
    assert!(value["checks"].as_array().unwrap().len() > 5);
    assert_eq!(value["parameters"]["m"], 6);
    // Canonical round trip: parse then re-emit identically.
    let reemitted = serde_json::to_string_pretty(&value).unwrap();
    let reparsed: serde_json::Value = serde_json::from_str(&reemitted).unwrap();
    assert_eq!(value, reparsed);
    assert_eq!(reemitted, stdout.trim_end());
}

#[test]
fn torus_quotient_label() {
    let (code, stdout, _) = run(&["quotient", "--m", "2", "--kind", "torus", "--l", "3"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("result: S(6, alpha)"));
}

#[test]
fn structure_command_passes() {
    let (code, stdout, _) = run(&["structure", "--m", "5", "--json"]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(value["command"], "structure");
    assert!(value["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "pass"));
}

#[test]
fn invalid_flags_exit_two() {
    let (code, _, stderr) = run(&["quotient", "--m", "4", "--kind", "nonsense"]);
    assert_eq!(code, 2, "{stderr}");
    let (code, _, _) = run(&["verify"]);
    assert_eq!(code, 2);
}

#[test]
fn kind_flag_misuse_exits_one() {
    let (code, _, stderr) = run(&["quotient", "--m", "3", "--kind", "involution"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("even m"));
    let (code, _, _) = run(&["quotient", "--m", "4", "--kind", "free", "--l", "2"]);
    assert_eq!(code, 1);
}

#[test]
fn dualgraph_emits_dot() {
    let (code, stdout, _) = run(&["dualgraph", "--m", "3", "--stage", "post"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("graph surface {"));
    assert!(stdout.contains("C2 -- C0;"));
    assert!(stdout.contains("E [label=\"E (-3)\"]"));
    let (code, stdout, _) = run(&["dualgraph", "--m", "1", "--stage", "pre"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("graph cover {"));
}

#[test]
fn window_env_var_is_honored() {
    let output = Command::new(env!("CARGO_BIN_EXE_inoue-aut"))
        .args(["verify", "--m", "2"])
        .env("INOUE_AUT_WINDOW", "4")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("all"));
}

#[test]
fn cover_quotient_round_trip_label() {
    let (code, stdout, _) = run(&[
        "quotient", "--m", "3", "--kind", "cover", "--l", "2", "--root", "1", "--json",
    ]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(value["report"]["result"]["m"], 6);
    assert_eq!(value["report"]["degree"], 2);
}
