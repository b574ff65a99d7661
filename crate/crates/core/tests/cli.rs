//! The command-line driver, run in-process with captured streams.

use dwork::cert::Certificate;
use dwork::cli::run;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv: Vec<&str> = std::iter::once("dwork").chain(args.iter().copied()).collect();
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn schubert_passes_and_is_deterministic() {
    let (code, first, _) = invoke(&["schubert"]);
    let (_, second, _) = invoke(&["schubert"]);
    assert_eq!(code, 0);
    assert_eq!(first, second);
    let cert = Certificate::from_json_str(&first).unwrap();
    assert!(cert.pass);
    assert!(first.contains("625") && first.contains("250"));
    assert!(!first.contains("millis"));
}

#[test]
fn timings_only_on_request() {
    let (code, out, err) = invoke(&["schubert", "--timings"]);
    assert_eq!(code, 0);
    assert!(out.contains("millis"));
    assert!(err.contains("wall time"));
    Certificate::from_json_str(&out).unwrap();
}

#[test]
fn deformation_reports_failures_with_exit_one() {
    let (code, out, _) = invoke(&["deformation", "--format", "text"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL"));
    assert!(out.contains("det-psi2"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(invoke(&["verify", "no-such-case"]).0, 2);
    assert_eq!(invoke(&["census", "--t", "0"]).0, 2);
    assert_eq!(invoke(&["fiber", "--w", "x/y"]).0, 2);
    assert_eq!(invoke(&["membership", "--line", "{}"]).0, 2);
    assert_eq!(invoke(&["frobnicate"]).0, 2);
    assert_eq!(invoke(&["schubert", "--format", "yaml"]).0, 2);
    assert_eq!(invoke(&["--help"]).0, 0);
}

#[test]
fn fiber_at_the_branch_value() {
    let (code, out, _) = invoke(&["fiber", "--w", "branch"]);
    assert_eq!(code, 0);
    assert!(Certificate::from_json_str(&out).unwrap().pass);
}

#[test]
fn identity_selection_by_group() {
    let (code, out, _) = invoke(&["verify", "row-relation", "vandermonde-inverse", "--format", "text"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("vandermonde-diagonal"));
    assert!(!out.contains("p-perfect-square"));
}

#[test]
fn refuted_literal_cases_fail_the_identity_suite() {
    let (code, out, _) = invoke(&["verify", "g-properties"]);
    assert_eq!(code, 1);
    let cert = Certificate::from_json_str(&out).unwrap();
    let failed: Vec<&str> = cert.failures().iter().map(|c| c.name.as_str()).collect();
    assert_eq!(failed, ["g-collision-slope-literal"]);
}

#[test]
fn membership_of_a_crossing_line() {
    let (code, out, _) = invoke(&["membership", "--line", r#"{"span": [[1, 0, -1, 0, 0], [0, 1, 0, -1, 0]]}"#, "--t", "3/7"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = invoke(&["membership", "--line", r#"{"span": [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0]]}"#]);
    assert_eq!(code, 1, "{out}");
}
