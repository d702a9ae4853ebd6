//! End-to-end tests of the `lucas` binary: grammar, formats, exit codes.

use std::process::{Command, Output};

fn lucas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lucas"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn eval_fibonacci_single_index() {
    let out = lucas(&["eval", "--preset", "fibonacci", "-n", "10"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "n=10 U=55 V=123\n");
}

#[test]
fn eval_explicit_params_base_case() {
    let out = lucas(&["eval", "-p", "2", "-q", "-1", "-n", "0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "n=0 U=0 V=2\n");
}

#[test]
fn eval_range_spans_negative_indices() {
    let out = lucas(&["eval", "--preset", "fibonacci", "-n", "-2..2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "n=-2 U=-1 V=3");
    assert_eq!(lines[4], "n=2 U=1 V=3");
}

#[test]
fn eval_negative_index_non_unit_q_is_domain_error() {
    let out = lucas(&["eval", "--preset", "jacobsthal", "-n", "-1"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn eval_missing_params_is_usage_error() {
    let out = lucas(&["eval", "-n", "3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn eval_zero_q_is_domain_error() {
    let out = lucas(&["eval", "-p", "3", "-q", "0", "-n", "1"]);
    assert_eq!(code(&out), 3);
    let out = lucas(&["eval", "-p", "2", "-q", "1", "-n", "1"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn eval_json_schema() {
    let out = lucas(&["eval", "--preset", "pell", "-n", "6", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["command"], "eval");
    assert_eq!(doc["params"]["p"], 2);
    assert_eq!(doc["params"]["q"], -1);
    assert_eq!(doc["params"]["delta"], 8);
    assert_eq!(doc["values"][0]["u"], "70");
    assert_eq!(doc["values"][0]["v"], "198");
    assert!(doc["values"][0]["u"].is_string(), "big values must be strings");
}

#[test]
fn sum_closed_form_value() {
    let out = lucas(&[
        "sum", "--preset", "fibonacci", "--kind", "S", "--pair", "UU", "-r", "1", "-s", "2",
        "-n", "2",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("= 47"), "got: {}", stdout(&out));
}

#[test]
fn sum_check_runs_all_three_paths() {
    let out = lucas(&[
        "sum", "--preset", "fibonacci", "--kind", "A", "--pair", "VV", "-r", "1", "-s", "1",
        "-n", "2", "--check",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("naive = 106"));
    assert!(text.contains("theorem1 = 106"));
    assert!(text.contains("corollary1 = 106"));
    assert!(text.contains("all paths agree"));
}

#[test]
fn sum_zero_terms() {
    let out = lucas(&[
        "sum", "--preset", "fibonacci", "--kind", "S", "--pair", "UU", "-r", "0", "-s", "0",
        "-n", "0",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("= 0"));
}

#[test]
fn sum_rejects_non_unit_q() {
    let out = lucas(&[
        "sum", "--preset", "jacobsthal", "--kind", "S", "--pair", "UU", "-r", "0", "-s", "0",
        "-n", "1",
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn sum_json_schema() {
    let out = lucas(&[
        "sum", "--preset", "fibonacci", "--kind", "S", "--pair", "UU", "-r", "1", "-s", "2",
        "-n", "2", "--format", "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["command"], "sum");
    assert_eq!(doc["value"], "47");
    assert_eq!(doc["path"], "theorem1");
    assert_eq!(doc["query"]["kind"], "S");
    assert_eq!(doc["query"]["pair"], "UU");
}

/// The `--check` path must fail loudly when any two paths disagree. The
/// binary ships a debug-only fault hook that offsets the closed-form value.
#[test]
fn sum_check_detects_injected_fault() {
    let out = Command::new(env!("CARGO_BIN_EXE_lucas"))
        .args([
            "sum", "--preset", "fibonacci", "--kind", "A", "--pair", "VV", "-r", "1", "-s", "1",
            "-n", "2", "--check",
        ])
        .env("LUCAS_CHECK_FAULT", "1")
        .output()
        .expect("binary runs");
    assert_eq!(code(&out), 1, "stdout: {}", stdout(&out));
    assert!(stdout(&out).contains("PATH DISAGREEMENT"));
}

#[test]
fn fault_hook_ignored_without_check() {
    // Without --check nothing compares the paths, but the injected value
    // must still not crash the command.
    let out = Command::new(env!("CARGO_BIN_EXE_lucas"))
        .args([
            "sum", "--preset", "fibonacci", "--kind", "S", "--pair", "UU", "-r", "0", "-s", "0",
            "-n", "1",
        ])
        .env("LUCAS_CHECK_FAULT", "0")
        .output()
        .expect("binary runs");
    assert_eq!(code(&out), 0);
}

#[test]
fn verify_single_identity() {
    let out = lucas(&["verify", "--id", "T91", "--grid", "default"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("T91 [assumed-true] verified-on-grid"));
}

#[test]
fn verify_audit_falsification_exits_zero() {
    let out = lucas(&["verify", "--id", "R-theta-even"]);
    assert_eq!(code(&out), 0, "audit verdicts must not affect the exit code");
    let text = stdout(&out);
    assert!(text.contains("falsified"));
    assert!(text.contains("counterexample"));
}

#[test]
fn verify_unknown_id_is_usage_error() {
    let out = lucas(&["verify", "--id", "NOPE"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_unknown_grid_is_usage_error() {
    let out = lucas(&["verify", "--id", "T91", "--grid", "huge"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_grid_overrides() {
    let out = lucas(&[
        "verify", "--id", "PELLSTAR", "--pq", "2,-1", "--count-range", "1..20",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("verified-on-grid"));
}

#[test]
fn verify_rejects_non_unit_q_params() {
    let out = lucas(&["verify", "--id", "T91", "--pq", "1,-2"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn verify_json_report() {
    let out = lucas(&["verify", "--id", "T94-printed", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["command"], "verify");
    assert!(doc["alarm"].is_null());
    let report = &doc["reports"][0];
    assert_eq!(report["identity"], "T94-printed");
    assert_eq!(report["status"], "audit");
    assert_eq!(report["verdict"], "falsified");
    let ce = &report["counterexamples"][0];
    assert!(ce["lhs"].is_string() && ce["rhs"].is_string());
}

#[test]
fn bench_single_term_reports_equality() {
    let out = lucas(&["bench", "--preset", "fibonacci", "-n", "0"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("equal=true"));
}

#[test]
fn bench_pell_values_agree() {
    let out = lucas(&["bench", "--preset", "pell", "-n", "1000", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let row = &doc["results"][0];
    assert_eq!(row["n"], 1000);
    assert_eq!(row["equal"], true);
    assert!(row["naive_ns"].is_number());
}

#[test]
fn oeis_offline_single_id() {
    let out = lucas(&["oeis", "--id", "A001906"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("A001906 match"));
}

#[test]
fn oeis_offline_all() {
    let out = lucas(&["oeis", "--all", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let reports = doc["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 14);
    assert!(reports.iter().all(|r| r["matched"] == true));
}

#[test]
fn oeis_unknown_id_is_usage_error() {
    let out = lucas(&["oeis", "--id", "A000000"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn oeis_too_many_terms_is_usage_error() {
    let out = lucas(&["oeis", "--id", "A000045", "--terms", "4000"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn usage_error_from_clap_is_exit_two() {
    let out = lucas(&["sum", "--preset", "fibonacci", "--kind", "X", "--pair", "UU", "-r", "0", "-s", "0", "-n", "0"]);
    assert_eq!(code(&out), 2);
    let out = lucas(&["frobnicate"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn tsv_format_rows() {
    let out = lucas(&["eval", "--preset", "fibonacci", "-n", "9..10", "--format", "tsv"]);
    assert_eq!(stdout(&out), "9\t34\t76\n10\t55\t123\n");
    let out = lucas(&["verify", "--id", "H2", "--format", "tsv"]);
    let text = stdout(&out);
    let fields: Vec<&str> = text.trim_end().split('\t').collect();
    assert_eq!(fields[0], "H2");
    assert_eq!(fields[2], "verified-on-grid");
}
