//! End-to-end tests running the compiled binary.

use std::process::{Command, Output};

fn symhyp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symhyp"))
        .args(args)
        .env_remove("SYMHYP_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

#[test]
fn field_command_prints_canonical_model() {
    let out = symhyp(&["field", "--field", "2,3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["q"], 8);
    assert_eq!(v["field"]["modulus"], serde_json::json!([1, 1, 0, 1]));
}

#[test]
fn count_command_reports_twelve_distinct_zeros() {
    let out = symhyp(&[
        "count",
        "--field",
        "5,1",
        "--k",
        "3",
        "--coeffs",
        "0,1",
        "--distinct",
        "--oracle",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["result"]["count"], 12);
    assert_eq!(v["oracle"]["count"], 12);
    assert_eq!(v["result"]["kind"], "distinct");
}

#[test]
fn vander_count_matches_count_command() {
    let out = symhyp(&[
        "vander", "count", "--field", "5,1", "--k", "3", "--poly", "0,0,0,1", "--oracle",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["result"]["count"], 12);
    assert_eq!(v["first_vanishing_subset"], serde_json::json!([0, 2, 3]));
}

#[test]
fn deephole_classifies_the_standard_example() {
    let out = symhyp(&[
        "rs", "deephole", "--field", "5,1", "--k", "3", "--poly", "0,0,1",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["verdict"]["is_deep_hole"], true);
    assert_eq!(v["verdict"]["sr_form"], true);
    assert_eq!(v["syndrome"]["w"], serde_json::json!([0, 0, 1]));
}

#[test]
fn verify_thm_main_exits_zero_with_verified_report() {
    let out = symhyp(&[
        "verify",
        "thm-main",
        "--field",
        "5,1",
        "--k",
        "3",
        "--m-range",
        "1,2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "verified");
    assert_eq!(v["cases_checked"], 120);
    assert_eq!(v["exhaustive"], true);
    let summary = String::from_utf8_lossy(&out.stderr);
    assert!(summary.contains("verified"), "stderr: {summary}");
}

#[test]
fn out_of_range_coefficient_is_a_usage_error() {
    let out = symhyp(&["count", "--field", "5,1", "--k", "3", "--coeffs", "9"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("out of range"), "stderr: {err}");
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = symhyp(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    let out = symhyp(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verify"));
}

#[test]
fn report_lands_in_the_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = symhyp(&[
        "verify",
        "remarks",
        "--field",
        "5,1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let body: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(body["experiment_id"], "remark-identities");
    assert_eq!(body["verdict"], "verified");
    let summary = String::from_utf8_lossy(&out.stdout);
    assert!(summary.contains("verified"), "stdout: {summary}");
}

#[test]
fn csv_format_emits_one_summary_row() {
    let out = symhyp(&[
        "verify",
        "subset-escape",
        "--field",
        "5,1",
        "--k",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("experiment_id,p,m,q,"));
    let row = lines.next().unwrap();
    assert!(row.starts_with("punctured-point-escape,5,1,5,true,5,0,"));
    assert!(row.contains(",verified,"));
    assert!(lines.next().is_none());
}

#[test]
fn threads_flag_wins_over_environment() {
    let base = ["verify", "remarks", "--field", "5,1"];
    let flag_and_env = Command::new(env!("CARGO_BIN_EXE_symhyp"))
        .args(["--threads", "2"])
        .args(base)
        .env("SYMHYP_THREADS", "3")
        .output()
        .unwrap();
    assert!(flag_and_env.status.success());
    let err = String::from_utf8_lossy(&flag_and_env.stderr);
    assert!(err.contains("using 2 worker threads"), "stderr: {err}");

    let env_only = Command::new(env!("CARGO_BIN_EXE_symhyp"))
        .args(base)
        .env("SYMHYP_THREADS", "3")
        .output()
        .unwrap();
    assert!(env_only.status.success());
    let err = String::from_utf8_lossy(&env_only.stderr);
    assert!(err.contains("using 3 worker threads"), "stderr: {err}");
}

#[test]
fn scan_deep_holes_counts_the_known_family() {
    let out = symhyp(&["verify", "scan-deep-holes", "--field", "7,1", "--k", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "verified");
    assert_eq!(v["params"]["deep_holes_found"], 6);
    assert_eq!(v["cases_checked"], 2401);
}

#[test]
fn subset_sum_bridge_runs_with_explicit_subset() {
    let out = symhyp(&[
        "verify",
        "subset-sum",
        "--field",
        "5,1",
        "--k",
        "2",
        "--a-k-minus-1",
        "0",
        "--a-k",
        "1",
        "--subset",
        "1,2,3,4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["params"]["subsets_with_target_sum"], 2);
}
