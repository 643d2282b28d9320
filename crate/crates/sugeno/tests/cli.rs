//! End-to-end tests of the `sugeno` binary: exit codes, output schemas,
//! endpoint expressions, config files, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn sugeno(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sugeno"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> Value {
    let text = String::from_utf8_lossy(&output.stdout);
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("bad JSON ({e}):\n{text}"))
}

fn without_timing(mut v: Value) -> Value {
    if let Some(map) = v.as_object_mut() {
        map.remove("timing_ms");
    }
    v
}

#[test]
fn integrate_reports_the_reference_value() {
    let out = sugeno(&[
        "integrate",
        "--f",
        "exp(-x)",
        "--a",
        "0",
        "--b",
        "1",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let record = stdout_json(&out);
    assert_eq!(record["command"], "integrate");
    assert_eq!(record["inputs"]["f"], "exp(-x)");
    let value = record["value"].as_f64().unwrap();
    assert!((value - 0.5671432904097838).abs() < 1e-6);
    assert_eq!(record["method"], "both");
    assert!(record["difference"].as_f64().unwrap() < 1e-4);
    assert!(record.get("timing_ms").is_some());
}

#[test]
fn integrate_accepts_constant_integrands() {
    let out = sugeno(&[
        "integrate",
        "--f",
        "0.25",
        "--a",
        "0",
        "--b",
        "1",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let record = stdout_json(&out);
    assert_eq!(record["value"].as_f64().unwrap(), 0.25);
}

#[test]
fn integrate_single_method_selection() {
    for (method, key) in [("fixed", "fixed_point"), ("grid", "grid")] {
        let out = sugeno(&[
            "integrate",
            "--f",
            "exp(-x)",
            "--a",
            "0",
            "--b",
            "1",
            "--method",
            method,
            "--format",
            "json",
        ]);
        assert!(out.status.success());
        let record = stdout_json(&out);
        assert_eq!(record["method"], key);
        assert!((record["value"].as_f64().unwrap() - 0.5671).abs() < 1e-3);
    }
}

#[test]
fn bound_accepts_pi_expressions_in_endpoints() {
    let out = sugeno(&[
        "bound",
        "--f",
        "exp(-sin(2*x))",
        "--a",
        "pi/4",
        "--b",
        "pi/2",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let record = stdout_json(&out);
    assert!((record["alpha"].as_f64().unwrap() - 0.5174514269317937).abs() < 1e-6);
    assert_eq!(record["case"], "general_increasing");
    assert_eq!(record["sound"], true);
    assert_eq!(
        record["bound"].as_f64().unwrap(),
        record["alpha"].as_f64().unwrap()
    );
}

#[test]
fn bound_with_verification_reports_slack() {
    let out = sugeno(&[
        "bound",
        "--f",
        "exp(-sin(x))",
        "--a",
        "0",
        "--b",
        "1",
        "--verify",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let record = stdout_json(&out);
    assert!((record["alpha"].as_f64().unwrap() - 0.6023726093202865).abs() < 1e-6);
    assert_eq!(record["case"], "unit_decreasing");
    assert_eq!(record["verify"]["holds"], true);
    assert!(record["verify"]["slack"].as_f64().unwrap() > 0.0);
}

#[test]
fn bound_warns_on_non_log_convex_input() {
    let out = sugeno(&[
        "bound",
        "--f",
        "exp(cos(x)-1)",
        "--a",
        "0",
        "--b",
        "1",
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "warning, not error");
    let record = stdout_json(&out);
    assert_eq!(record["sound"], false);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("warning"), "stderr: {stderr}");
}

#[test]
fn check_classical_flags_the_failing_sides() {
    let out = sugeno(&[
        "check-classical",
        "--f",
        "exp(-x)",
        "--a",
        "0",
        "--b",
        "1",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let record = stdout_json(&out);
    assert_eq!(record["report"]["left_holds"], false);
    assert_eq!(record["report"]["right_holds"], true);

    let out = sugeno(&[
        "check-classical",
        "--f",
        "exp(-cos(x)-1)",
        "--a",
        "0",
        "--b",
        "1",
        "--format",
        "json",
    ]);
    let record = stdout_json(&out);
    assert_eq!(record["report"]["left_holds"], true);
    assert_eq!(record["report"]["right_holds"], false);
}

#[test]
fn verify_paper_passes_at_default_and_tight_tolerances() {
    let out = sugeno(&["verify-paper", "--format", "json"]);
    assert!(out.status.success());
    let record = stdout_json(&out);
    assert_eq!(record["report"]["all_pass"], true);
    assert_eq!(record["report"]["examples_passed"], 5);
    assert_eq!(record["report"]["examples_total"], 5);

    // Tightening the tolerance swaps the targets to recomputed roots.
    let out = sugeno(&["verify-paper", "--tol", "1e-6", "--format", "json"]);
    assert!(out.status.success());
    let record = stdout_json(&out);
    assert_eq!(record["report"]["all_pass"], true);
    let cases = record["report"]["cases"].as_array().unwrap();
    let alpha_case = cases
        .iter()
        .find(|c| c["name"] == "example-3")
        .expect("example-3 present");
    assert!((alpha_case["expected"].as_f64().unwrap() - 0.5671432904097838).abs() < 1e-12);
}

#[test]
fn properties_suite_passes_and_demonstrates_fallback() {
    let out = sugeno(&["properties", "--seed", "42", "--format", "json"]);
    assert!(out.status.success());
    let record = stdout_json(&out);
    let report = &record["report"];
    assert_eq!(report["pass"], true);
    assert_eq!(report["laws"]["pass"], true);
    assert_eq!(report["saturation_ok"], true);
    assert_eq!(report["plateau_demo"]["fallback_used"], true);
    assert!((report["plateau_demo"]["grid_value"].as_f64().unwrap() - 0.5).abs() < 1e-9);
}

#[test]
fn exit_code_2_on_parse_errors() {
    let out = sugeno(&["integrate", "--f", "exp(", "--a", "0", "--b", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));

    let out = sugeno(&["integrate", "--f", "exp(-x)", "--a", "1", "--b", "0"]);
    assert_eq!(out.status.code(), Some(2), "inverted interval");

    let out = sugeno(&["integrate", "--f", "exp(-x)", "--a", "x", "--b", "1"]);
    assert_eq!(out.status.code(), Some(2), "non-constant endpoint");
}

#[test]
fn exit_code_3_on_numeric_failures() {
    // Negative integrand, fixed method requested explicitly.
    let out = sugeno(&[
        "integrate",
        "--f",
        "x-0.5",
        "--a",
        "0",
        "--b",
        "1",
        "--method",
        "fixed",
    ]);
    assert_eq!(out.status.code(), Some(3));

    // ln is undefined on part of the interval.
    let out = sugeno(&["integrate", "--f", "ln(x-0.5)", "--a", "0", "--b", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn csv_output_is_one_row_per_result() {
    let out = sugeno(&[
        "integrate",
        "--f",
        "exp(-x)",
        "--a",
        "0",
        "--b",
        "1",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines.len(), 3, "header plus two method rows:\n{text}");
    assert!(lines[0].starts_with("command,f,a,b,method,value"));
    assert!(lines[1].contains("fixed_point"));
    assert!(lines[2].contains("grid"));
}

#[test]
fn json_output_is_deterministic_apart_from_timing() {
    let run = || {
        let out = sugeno(&[
            "properties",
            "--seed",
            "42",
            "--f",
            "exp(-x)",
            "--a",
            "0",
            "--b",
            "1",
            "--format",
            "json",
        ]);
        assert!(out.status.success());
        without_timing(stdout_json(&out))
    };
    assert_eq!(run(), run());
}

#[test]
fn config_file_supplies_defaults() {
    let dir = std::env::temp_dir().join(format!("sugeno-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path: PathBuf = dir.join("defaults.conf");
    std::fs::write(&path, "f = exp(-x)\na = 0\nb = 1\nformat = json\n").unwrap();

    let out = sugeno(&["integrate", "--config", path.to_str().unwrap()]);
    assert!(out.status.success());
    let record = stdout_json(&out);
    assert!((record["value"].as_f64().unwrap() - 0.5671).abs() < 1e-3);

    // Explicit flags win over the config.
    let out = sugeno(&[
        "integrate",
        "--config",
        path.to_str().unwrap(),
        "--f",
        "0.25",
    ]);
    assert!(out.status.success());
    let record = stdout_json(&out);
    assert_eq!(record["value"].as_f64().unwrap(), 0.25);

    std::fs::remove_dir_all(&dir).ok();
}
