use frontier_cli::{emit_report, exit_code, run_from_args, Format, EXIT_FAIL, EXIT_OK, EXIT_UNDECIDED, EXIT_USAGE};
use frontier_core::audit::{claim, AuditReport, AuditStep, Verdict};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("frontier").chain(args.iter().copied());
    let code = run_from_args(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn step(claim_id: &str, t: u32, verdict: Verdict) -> AuditStep {
    AuditStep {
        claim_id: claim_id.into(),
        t,
        verdict,
        lhs_decimal_50: "0".into(),
        rhs_decimal_50: "1".into(),
        witness: None,
    }
}

/// Every JSON number must be an integer; fractional values travel as strings.
fn assert_no_bare_floats(v: &Value) {
    match v {
        Value::Number(n) => assert!(n.is_u64() || n.is_i64(), "bare float {n}"),
        Value::Array(a) => a.iter().for_each(assert_no_bare_floats),
        Value::Object(o) => o.values().for_each(assert_no_bare_floats),
        _ => {}
    }
}

#[test]
fn p0_at_28_is_one_fifth() {
    let (code, out, _) = run(&["p0", "--t", "28"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "{\"t\":28,\"p0\":\"1/5\"}\n");
}

#[test]
fn irrational_p0_carries_tagged_decimal() {
    let v = json(&["p0", "--t", "15"]);
    assert_eq!(v["p0"], "1/34+1/34*sqrt(69)");
    assert!(v["p0_decimal_50"].as_str().unwrap().starts_with("0.27372423126"));
}

#[test]
fn ratio_curve_csv_rows_positive_and_decreasing() {
    let (code, out, _) = run(&["ratio-curve", "--t-max", "100", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 101);
    assert!(lines[0].ends_with("ratio_minus_half_decimal_50"));
    let last: Vec<f64> = lines[1..].iter().map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert!(last.iter().all(|&x| x > 0.0));
    assert!(last.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn h1_audit_over_10_to_30() {
    let (code, out, _) = run(&["audit-cases", "--case", "h1", "--t-range", "10:30"]);
    assert_eq!(code, EXIT_OK);
    let steps: Vec<Value> = serde_json::from_str(&out).unwrap();
    let bound: Vec<&Value> = steps.iter().filter(|s| s["claim_id"] == "h1.bound").collect();
    assert_eq!(bound.len(), 21);
    let first = bound.iter().find(|s| s["verdict"] == "holds").unwrap();
    assert_eq!(first["t"], 15);
    assert!(bound.iter().all(|s| (s["verdict"] == "holds") == (s["t"].as_u64().unwrap() >= 15)));
}

#[test]
fn failures_below_asserted_threshold_exit_zero() {
    let (code, _, _) = run(&["audit-cases", "--case", "h1", "--t-range", "14:14"]);
    assert_eq!(code, EXIT_OK);
    let (code, _, _) = run(&["audit-cases", "--case", "h2", "--t-range", "53:53"]);
    assert_eq!(code, EXIT_OK);
    let (code, out, _) = run(&["audit-cases", "--case", "large", "--t-range", "241:241"]);
    assert_eq!(code, EXIT_OK, "{out}");
}

#[test]
fn failing_asserted_link_exits_one() {
    let (code, out, _) = run(&["audit-cases", "--case", "mid", "--t-range", "111:111"]);
    assert_eq!(code, EXIT_FAIL);
    let steps: Vec<Value> = serde_json::from_str(&out).unwrap();
    let failed: Vec<&Value> = steps.iter().filter(|s| s["verdict"] == "fails").collect();
    assert_eq!(failed.len(), 2);
    assert!(failed.iter().any(|s| s["claim_id"] == "mid.ratio_link"));
    assert!(failed.iter().any(|s| s["claim_id"] == "mid.f_ge_one"));
}

#[test]
fn empty_report_json_is_empty_array() {
    let report = AuditReport::new("empty", vec![], &[]);
    let mut buf = Vec::new();
    emit_report(&report, Format::Json, &mut buf).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap().trim_end(), "[]");
    assert_eq!(exit_code(&report), EXIT_OK);
}

#[test]
fn single_verdict_table_has_one_row() {
    let claims = [claim("x.one", "one claim", Some(1))];
    let report = AuditReport::new("single", vec![step("x.one", 3, Verdict::Holds)], &claims);
    let mut buf = Vec::new();
    emit_report(&report, Format::Table, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("x.one")).collect();
    assert_eq!(rows.len(), 1);
    let header = text.lines().find(|l| l.starts_with("claim")).unwrap();
    assert_eq!(header.find("checked").map(|i| i + 7), rows[0].find('1').map(|i| i + 1));
}

#[test]
fn mixed_verdicts_map_to_exit_codes() {
    let claims = [claim("a", "a", Some(5)), claim("b", "b", None)];
    let fails_outside =
        AuditReport::new("r", vec![step("a", 4, Verdict::Fails), step("a", 5, Verdict::Holds)], &claims);
    assert_eq!(exit_code(&fails_outside), EXIT_OK);
    let fails_inside =
        AuditReport::new("r", vec![step("a", 6, Verdict::Fails), step("a", 7, Verdict::Undecided)], &claims);
    assert_eq!(exit_code(&fails_inside), EXIT_FAIL);
    let undecided =
        AuditReport::new("r", vec![step("a", 7, Verdict::Undecided), step("a", 8, Verdict::Holds)], &claims);
    assert_eq!(exit_code(&undecided), EXIT_UNDECIDED);
    let unprescribed = AuditReport::new("r", vec![step("b", 9, Verdict::Fails)], &claims);
    assert_eq!(exit_code(&unprescribed), EXIT_OK);
}

#[test]
fn csv_report_has_header_and_note() {
    let (code, out, _) = run(&["audit-cases", "--case", "h3", "--t-range", "4:5", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert!(lines.next().unwrap().contains("display only - verdicts are exact"));
    assert_eq!(lines.next().unwrap(), "claim_id,t,verdict,lhs_decimal_50,rhs_decimal_50,witness");
    assert_eq!(lines.count(), 2 * 4);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bogus"]).0, EXIT_USAGE);
    assert_eq!(run(&["measure", "--frontier", "2,2,1", "--p", "1/x"]).0, EXIT_USAGE);
    assert_eq!(run(&["measure", "--frontier", "2,2,1", "--p", "1/0"]).0, EXIT_USAGE);
    assert_eq!(run(&["audit-cases", "--case", "h4", "--t-range", "1:2"]).0, EXIT_USAGE);
    assert_eq!(run(&["audit-cases", "--case", "h1", "--t-range", "9"]).0, EXIT_USAGE);
    assert_eq!(run(&["p0", "--t", "0"]).0, EXIT_USAGE);
    assert_eq!(run(&["measure", "--p", "1/3"]).0, EXIT_USAGE);
    let (code, _, err) = run(&["measure", "--family-file", "/nonexistent/x.txt", "--p", "1/3"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("/nonexistent/x.txt"));
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("audit-cases"));
}

#[test]
fn measure_of_window_and_lift_agree() {
    let window = json(&["measure", "--frontier", "2,2,1", "--p", "1/5"]);
    let lifted = json(&["measure", "--frontier", "2,2,1", "--n", "9", "--p", "1/5"]);
    assert_eq!(window["mu"], "17/625");
    assert_eq!(window["mu"], lifted["mu"]);
    let at_p0 = json(&["measure", "--frontier", "3,4,1", "--p", "p0"]);
    assert_eq!(at_p0["p"], "1/2");
    assert_eq!(at_p0["mu"], "1/16");
}

#[test]
fn shift_trace_is_strictly_decreasing() {
    let (code, out, _) =
        run(&["shift", "--example", "second-layer", "--t", "1", "--n", "6", "--policy", "seed:3", "--trace"]);
    assert_eq!(code, EXIT_OK);
    let pots: Vec<u64> =
        out.lines().map(|l| serde_json::from_str::<Value>(l).unwrap()["potential"].as_u64().unwrap()).collect();
    assert!(pots.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn shift_and_closure_write_family_files() {
    let dir = tempfile::tempdir().unwrap();
    let shifted = dir.path().join("shifted.txt");
    let v = json(&["shift", "--example", "gprime", "--t", "2", "--n", "5", "--out", shifted.to_str().unwrap()]);
    assert_eq!(v["shifted"], true);
    let closed = dir.path().join("closed.txt");
    let v = json(&[
        "closure",
        "--family-file",
        shifted.to_str().unwrap(),
        "--t",
        "2",
        "--r",
        "2",
        "--out",
        closed.to_str().unwrap(),
    ]);
    assert_eq!(v["maximal"], true);
    assert!(std::fs::read_to_string(&closed).unwrap().starts_with("n=5\n"));
}

#[test]
fn decompose_reports_holes_and_bound() {
    let v = json(&["decompose", "--frontier", "3,2,1", "--n", "8", "--p", "1/5"]);
    assert_eq!(v["s"], 3);
    assert_eq!(v["h"], 1);
    assert_eq!(v["holes"].as_array().unwrap().len(), 2);
    assert_eq!(v["mu"], v["bound"]);
}

#[test]
fn audit_mifr_on_frontier_lift_holds() {
    let (code, out, _) = run(&["audit-mifr", "--frontier", "3,2,2", "--n", "10"]);
    assert_eq!(code, EXIT_OK);
    let steps: Vec<Value> = serde_json::from_str(&out).unwrap();
    assert!(steps.iter().all(|s| s["verdict"] == "holds" || s["verdict"] == "not-applicable"));
}

#[test]
fn enumerate_is_deterministic_with_and_without_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let plain = run(&["enumerate", "--n", "5", "--r", "2", "--t", "1"]);
    let cold = run(&["enumerate", "--n", "5", "--r", "2", "--t", "1", "--cache-dir", cache]);
    let warm = run(&["enumerate", "--n", "5", "--r", "2", "--t", "1", "--cache-dir", cache]);
    assert_eq!(plain, cold);
    assert_eq!(cold, warm);
    let classes: Vec<Value> = serde_json::from_str(&plain.1).unwrap();
    assert_eq!(classes.len(), 7);
    let orbit_total: u64 = classes.iter().map(|c| c["orbit_size"].as_u64().unwrap()).sum();
    assert_eq!(orbit_total, 81);
    assert!(dir.path().join("maximal-v1/n5-r2-t1/index.json").exists());
}

#[test]
fn recognition_and_stability_commands() {
    let (code, _, _) = run(&["verify-recognition", "--n", "5", "--t", "1", "--i", "1"]);
    assert_eq!(code, EXIT_OK);
    let (code, out, _) = run(&["verify-stability", "--n", "5", "--t", "1", "--p", "1/5,1/4", "--format", "table"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("stability.trichotomy"));
}

#[test]
fn json_outputs_have_no_bare_floats() {
    for args in [
        &["p0", "--t", "15"][..],
        &["ratio-curve", "--t-max", "5"],
        &["measure", "--example", "gprime", "--t", "2", "--n", "6", "--p", "1/3"],
        &["decompose", "--frontier", "3,2,1", "--n", "8", "--p", "1/5"],
        &["audit-cases", "--case", "mid", "--t-range", "111:112"],
        &["enumerate", "--n", "4", "--r", "3", "--t", "1"],
    ] {
        let (_, out, _) = run(args);
        assert_no_bare_floats(&serde_json::from_str(&out).unwrap());
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let one = run(&["--threads", "1", "audit-cases", "--case", "h2", "--t-range", "1:40"]);
    let four = run(&["--threads", "4", "audit-cases", "--case", "h2", "--t-range", "1:40"]);
    assert_eq!(one, four);
}
