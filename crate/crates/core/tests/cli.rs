//! End-to-end checks of the command-line contract: exit codes, input forms
//! and report shapes.

use std::io::Write;
use std::process::{Command, Output};

fn stablecore(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stablecore"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn check_reports_figure_data() {
    let out = stablecore(&["check", "--input", r#"{"d":6,"rows":[6,6,6,4]}"#, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["g"], 4);
    assert_eq!(v["Gd"]["holds"], true);
    assert_eq!(v["analytic_spread"], 6);
}

#[test]
fn check_accepts_generator_form() {
    let out = stablecore(&[
        "check",
        "--input",
        r#"{"d":3,"generators":["x1^2","x1*x2","x1*x3","x2^2","x2*x3","x3^2"]}"#,
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["g"], 3);
    assert_eq!(v["rows"], serde_json::json!([3, 3, 3]));
}

#[test]
fn check_reads_input_files() {
    let dir = std::env::temp_dir().join(format!("stablecore-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ideal.json");
    let mut file = std::fs::File::create(&path).unwrap();
    write!(file, r#"{{"d":4,"rows":[4,2]}}"#).unwrap();
    let out = stablecore(&["check", "--input", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["g"], 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn parse_errors_exit_2() {
    for input in [
        "not json",
        r#"{"d":0,"rows":[1]}"#,
        r#"{"d":3}"#,
        r#"{"d":3,"rows":[3],"generators":["x1^2"]}"#,
        r#"{"d":3,"generators":["y1*y2"]}"#,
        "/nonexistent/path.json",
    ] {
        let out = stablecore(&["check", "--input", input]);
        assert_eq!(out.status.code(), Some(2), "input {input:?}");
    }
    // desk-scale guard
    let out = stablecore(&["check", "--input", r#"{"d":9,"rows":[9]}"#]);
    assert_eq!(out.status.code(), Some(2));
    let out = stablecore(&["check", "--input", r#"{"d":9,"rows":[9]}"#, "--max-d", "9"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn unknown_flags_are_errors() {
    let out = stablecore(&["check", "--input", r#"{"d":2,"rows":[2]}"#, "--frobnicate"]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn stability_errors_exit_3() {
    for input in [
        r#"{"d":3,"rows":[3,4]}"#,
        r#"{"d":2,"generators":["x1*x2","x2^2"]}"#,
        r#"{"d":3,"rows":[]}"#,
    ] {
        let out = stablecore(&["check", "--input", input]);
        assert_eq!(out.status.code(), Some(3), "input {input:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn missing_gd_exits_4() {
    let out = stablecore(&["core", "--input", r#"{"d":4,"rows":[4,3,3]}"#]);
    assert_eq!(out.status.code(), Some(4));
    let out = stablecore(&["certify-all", "--input", r#"{"d":4,"rows":[4,3,3]}"#]);
    assert_eq!(out.status.code(), Some(4));
    // check itself still reports, exit 0
    let out = stablecore(&["check", "--input", r#"{"d":4,"rows":[4,3,3]}"#, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["Gd"]["holds"], false);
    assert_eq!(v["Gd"]["witness"]["s"], 3);
}

#[test]
fn core_trims_and_reports_provenance() {
    let out = stablecore(&["core", "--input", r#"{"d":5,"rows":[2,2]}"#, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["ideal"]["d"], 2);
    assert_eq!(v["ideal"]["original_d"], 5);
    assert_eq!(v["ideal"]["trimmed"], true);
    let gens: Vec<String> = v["core_generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect();
    assert_eq!(gens, vec!["x2^3", "x1*x2^2", "x1^2*x2", "x1^3"]);
}

#[test]
fn algorithm_emits_json_lines() {
    let out = stablecore(&["algorithm", "--input", r#"{"d":2,"rows":[2,2]}"#, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<&str> = std::str::from_utf8(&out.stdout).unwrap().lines().collect();
    assert_eq!(
        lines,
        vec![
            r#"{"index":1,"monomial":"x1*x2","h":1,"j":1}"#,
            r#"{"index":2,"monomial":"x2^3","h":2,"j":1}"#,
            r#"{"index":3,"monomial":"x1^2","h":1,"j":2}"#,
        ]
    );
}

#[test]
fn socle_and_northcott_take_dimension_args() {
    let out = stablecore(&["socle", "--d", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["socle_basis"], serde_json::json!(["x1^3"]));

    let out = stablecore(&["northcott", "--d", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["det"], "1/2*x1^2 - 1/2*x2^2");
    assert_eq!(v["eq3"], true);
    assert_eq!(v["eq4"], true);
    assert_eq!(v["colon_match"], true);

    let out = stablecore(&["northcott", "--d", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn certify_all_report_schema() {
    let out = stablecore(&[
        "certify-all",
        "--input",
        r#"{"d":3,"rows":[3,3]}"#,
        "--seed",
        "3",
        "--trials",
        "2",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["ideal"]["d"], 3);
    assert_eq!(v["g"], 2);
    assert_eq!(v["seed"], 3);
    assert_eq!(v["trials"], 2);
    let checks = &v["checks"];
    for key in [
        "Gd",
        "strata_order",
        "Im_in_J",
        "reduction_holds",
        "core_strongly_stable",
        "socle",
        "socle_ladder",
        "upper_bound_ok",
    ] {
        assert_eq!(checks[key], true, "check {key}");
    }
    assert_eq!(checks["upper_bound_trials"], 2);
    assert!(checks["reduction_number_leq"].as_u64().unwrap() <= 1);
    assert_eq!(checks["northcott"]["eq3"], true);
    assert_eq!(checks["lower_bound"], "verified");
}

#[test]
fn certify_all_single_row_is_extrapolated() {
    let out = stablecore(&["certify-all", "--input", r#"{"d":3,"rows":[3]}"#, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["checks"]["lower_bound"], "formula-extrapolated (g=1)");
    assert_eq!(v["checks"]["gd_convention_g1"], true);
}
