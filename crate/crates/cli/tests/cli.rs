//! End-to-end tests of the command-line interface: exit-code contract,
//! output formats, round-trips and the claim-file path.

use std::process::{Command, Output};

fn mills(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mills"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn eval_prints_an_enclosure() {
    let out = mills(&["eval", "0", "--width", "1e-12"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("f(0) in [1.253314137315"), "got: {text}");
}

#[test]
fn eval_first_derivative_at_one() {
    let out = mills(&["eval", "1", "--derivative", "1"]);
    assert!(out.status.success());
    // f'(1) = f(1) - 1 = -0.34432...
    assert!(stdout(&out).contains("-0.34432"), "got: {}", stdout(&out));
}

#[test]
fn eval_rejects_negative_argument_with_exit_2() {
    let out = mills(&["eval", "--", "-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eval_json_is_machine_readable() {
    let out = mills(&["eval", "1/2", "--format", "json"]);
    assert!(out.status.success());
    let payload: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let lo = parse_ratio(payload["lo"].as_str().unwrap());
    let hi = parse_ratio(payload["hi"].as_str().unwrap());
    assert!(lo < hi);
}

fn parse_ratio(s: &str) -> num_rational::BigRational {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    num_rational::BigRational::new(n.parse().unwrap(), d.parse().unwrap())
}

#[test]
fn table_reproduces_the_tail_ordering() {
    // J2 < Q2/P2 < f < Q3/P3 < J3 on every positive row
    let out = mills(&[
        "table",
        "--range",
        "0.5:5:11",
        "--bounds",
        "Q3P3,Q2P2,J3,J2",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(
        header,
        vec![
            "x", "f_lo", "f_hi", "Q3P3_lo", "Q3P3_hi", "Q2P2_lo", "Q2P2_hi", "J3_lo", "J3_hi",
            "J2_lo", "J2_hi"
        ]
    );
    for line in lines {
        let cells: Vec<num_rational::BigRational> =
            line.split(',').map(parse_ratio).collect();
        let (f_lo, f_hi) = (&cells[1], &cells[2]);
        let q3 = &cells[3];
        let q2 = &cells[5];
        let j3 = &cells[7];
        let j2 = &cells[9];
        assert!(j2 < q2 && q2 < f_hi && f_lo < q3 && q3 < j3, "ordering fails: {line}");
    }
}

#[test]
fn table_without_points_is_a_usage_error() {
    let out = mills(&["table", "--bounds", "J2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_rejects_unknown_bound() {
    let out = mills(&["table", "--xs", "1", "--bounds", "NO_SUCH"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_round_trips_to_the_same_enclosures() {
    let out = mills(&[
        "bounds", "eval", "W_{2,1}", "--xs", "1/2,2",
        "--precision", "10", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,bound_lo,bound_hi,f_lo,f_hi");
    // parsing the emitted exact rationals reproduces ordered enclosures
    for line in &lines[1..] {
        let cells: Vec<num_rational::BigRational> = line.split(',').map(parse_ratio).collect();
        assert!(cells[1] <= cells[2] && cells[3] <= cells[4]);
        // upper bound: f enclosure strictly below the bound enclosure
        assert!(cells[4] < cells[1], "W_{{2,1}} must lie above f: {line}");
    }
}

#[test]
fn bounds_list_emits_stable_json() {
    let out = mills(&["bounds", "list", "--format", "json"]);
    assert!(out.status.success());
    let payload: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let entries = payload.as_array().unwrap();
    assert!(entries.len() >= 27);
    for entry in entries {
        assert!(entry["id"].is_string());
        assert!(entry["side"].is_string());
        assert!(entry["formula"].is_string());
    }
}

#[test]
fn verify_single_claim_exits_zero() {
    let out = mills(&["verify", "convexity_g_positive"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Proved"));
}

#[test]
fn verify_unknown_claim_exits_two() {
    let out = mills(&["verify", "no_such_claim"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_json_certificates_parse() {
    let out = mills(&["verify", "f_decreasing", "chernoff_upper", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let payload: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let certs = payload.as_array().unwrap();
    assert_eq!(certs.len(), 2);
    for cert in certs {
        assert_eq!(cert["verdict"], "PROVED");
        assert!(cert["claim_id"].is_string());
    }
}

#[test]
fn verify_claim_file_roundtrip() {
    // 2 + x^2 f^2 - f^2 - 3 x f > 0, the registry's convexity expression,
    // supplied through the user claim-file schema
    let dir = std::env::temp_dir().join(format!("mills-claims-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("claims.json");
    std::fs::write(
        &path,
        r#"[
          {
            "id": "user_convexity",
            "terms": [["2", 0, 0], ["1", 2, 2], ["-1", 0, 2], ["-3", 1, 1]],
            "subclaims": [
              { "lo": "0", "hi": "1", "strategy": { "taylor_rational": { "order": 7, "precision": 1 } } },
              { "lo": "1", "strategy": { "convergent": { "even_index": 10 } } }
            ]
          }
        ]"#,
    )
    .unwrap();
    let out = mills(&["verify", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("user_convexity"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_failing_claim_exits_one() {
    // -1 > 0 is registered through a claim file and must fail
    let dir = std::env::temp_dir().join(format!("mills-claims-fail-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("claims.json");
    std::fs::write(
        &path,
        r#"[
          {
            "id": "falsehood",
            "terms": [["-1", 0, 0]],
            "subclaims": [
              { "lo": "0", "hi": "1", "strategy": { "taylor_rational": { "order": 7, "precision": 1 } } }
            ]
          }
        ]"#,
    )
    .unwrap();
    let out = mills(&["verify", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sturm_count_and_isolate_the_worked_quartic() {
    let quartic = "3416/5625 x^4 - 469/150 x^3 + 179249/90000 x^2 - 94/75 x + 2414/5625";
    let out = mills(&["sturm", "--poly", quartic, "--interval", "0:0.45", "count"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("0 distinct real roots"));

    let out = mills(&["sturm", "--poly", quartic, "--interval", "0:inf", "isolate", "--format", "json"]);
    assert!(out.status.success());
    let payload: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let intervals = payload.as_array().unwrap();
    assert_eq!(intervals.len(), 2);
    let first_lo = parse_ratio(intervals[0][0].as_str().unwrap());
    let first_hi = parse_ratio(intervals[0][1].as_str().unwrap());
    let lo_bound = parse_ratio("45/100");
    let hi_bound = parse_ratio("46/100");
    assert!(first_lo >= lo_bound && first_hi <= hi_bound);
}

#[test]
fn sturm_accepts_json_coefficients() {
    let out = mills(&[
        "sturm", "--poly", r#"["-2", "0", "1"]"#, "--interval", "0:2", "count",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("1 "));
}

#[test]
fn sturm_rejects_malformed_polynomial() {
    let out = mills(&["sturm", "--poly", "1 + q^2", "count"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn env_var_sets_default_precision() {
    let out = Command::new(env!("CARGO_BIN_EXE_mills"))
        .args(["bounds", "eval", "ETA_2", "--xs", "1", "--format", "csv"])
        .env("MILLS_DEFAULT_PRECISION", "4")
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    let line = text.lines().nth(1).unwrap();
    let cells: Vec<num_rational::BigRational> = line.split(',').map(parse_ratio).collect();
    let width = &cells[2] - &cells[1];
    let budget = parse_ratio("1/10000");
    assert!(width <= budget);
}

#[test]
fn local_pair_sandwiches_f_near_two() {
    let out = mills(&[
        "table", "--xs", "2",
        "--bounds", "LOCAL2_lower,LOCAL2_upper",
        "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let line = text.lines().nth(1).unwrap();
    let cells: Vec<num_rational::BigRational> = line.split(',').map(parse_ratio).collect();
    let (f_lo, f_hi) = (&cells[1], &cells[2]);
    let lower_hi = &cells[4];
    let upper_lo = &cells[5];
    assert!(lower_hi < f_lo && f_hi < upper_lo, "sandwich fails: {line}");
    // the pair evaluates to the exact fractions 2/5 and 3/7 at x = 2
    assert_eq!(lower_hi, &parse_ratio("2/5"));
    assert_eq!(upper_lo, &parse_ratio("3/7"));
}
