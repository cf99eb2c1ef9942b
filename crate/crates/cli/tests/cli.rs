//! End-to-end tests that spawn the compiled `eqcm` binary.

use serde_json::Value;
use std::process::{Command, Output};

fn eqcm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqcm"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn parse_json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout should be valid JSON")
}

#[test]
fn reproduce_passes_and_reports_every_constant() {
    let out = eqcm(&["reproduce"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.matches("  ok").count(), 13);
    assert!(text.contains("result: PASS (13/13"));
}

#[test]
fn reproduce_json_lists_thirteen_passing_rows() {
    let out = eqcm(&["reproduce", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = parse_json(&out);
    assert_eq!(v["inputs"]["lambda_offset"], 0.0);
    assert_eq!(v["outputs"]["all_pass"], true);
    let rows = v["outputs"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 13);
    for row in rows {
        assert_eq!(row["pass"], true, "row {} should pass", row["name"]);
        assert!(row["abs_error"].as_f64().unwrap() < row["tolerance"].as_f64().unwrap());
    }
}

#[test]
fn perturbed_reproduce_fails_with_exit_code_1() {
    let out = eqcm(&["reproduce", "--perturb-lambda", "1e-3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn sweep_csv_has_the_documented_header_and_round_trips() {
    let out = eqcm(&[
        "sweep", "--plane", "xz", "--min", "0", "--max", "0.4", "--steps", "41", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 42);
    assert_eq!(
        text.lines().next().unwrap(),
        "plane,lambda,d_a_numeric,d_a_closed,d_ab_numeric,d_ab_closed,\
         f1_numeric,f1_closed,f2_numeric,f2_closed,angle_spread"
    );

    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let mut lambdas = Vec::new();
    for record in reader.records() {
        let record = record.unwrap();
        assert_eq!(&record[0], "xz");
        let fields: Vec<f64> = (1..record.len())
            .map(|i| record[i].parse().unwrap())
            .collect();
        let [lambda, d_a_n, d_a_c, d_ab_n, d_ab_c, f1_n, f1_c, f2_n, f2_c, spread] =
            fields[..].try_into().unwrap();
        assert!((d_a_n - d_a_c).abs() < 1e-9);
        assert!((d_ab_n - d_ab_c).abs() < 1e-9);
        assert!((f1_n - f1_c).abs() < 1e-9);
        assert!((f2_n - f2_c).abs() < 1e-9);
        assert!(spread < 1e-11);
        // 17 significant digits must round-trip to the identical f64
        for field in 1..record.len() {
            let parsed: f64 = record[field].parse().unwrap();
            assert_eq!(format!("{parsed:.16e}"), &record[field]);
        }
        lambdas.push(lambda);
    }
    assert_eq!(lambdas.len(), 41);
    assert_eq!(lambdas[0], 0.0);
    assert!((lambdas[40] - 0.4).abs() < 1e-15);
    assert!((lambdas[1] - 0.01).abs() < 1e-15);
}

#[test]
fn sweep_lambda_zero_row_matches_the_known_values() {
    let out = eqcm(&[
        "sweep", "--min", "0", "--max", "0.1", "--steps", "2", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let d_a: f64 = row[2].parse().unwrap();
    let f2: f64 = row[8].parse().unwrap();
    assert!((d_a - 1.0 / 18.0).abs() < 1e-12);
    assert!((f2 - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
}

#[test]
fn sweep_rejects_bad_ranges_and_grids() {
    for args in [
        vec!["sweep", "--min", "0.5", "--max", "0.1"],
        vec!["sweep", "--steps", "1"],
        vec!["sweep", "--min", "-1.5"],
        vec!["sweep", "--max", "1.0"],
        vec!["sweep", "--plane", "ab"],
        vec!["sweep", "--angles", "4"],
    ] {
        let out = eqcm(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn clone_json_reports_the_known_lambda_zero_state() {
    let out = eqcm(&[
        "clone", "--plane", "xz", "--angle", "0", "--lambda", "0", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = parse_json(&out);
    let outputs = &v["outputs"];

    let rho_a = outputs["rho_a"].as_array().unwrap();
    assert!((rho_a[0][0]["re"].as_f64().unwrap() - 5.0 / 6.0).abs() < 1e-12);
    assert!((rho_a[1][1]["re"].as_f64().unwrap() - 1.0 / 6.0).abs() < 1e-12);
    assert!(rho_a[0][1]["re"].as_f64().unwrap().abs() < 1e-12);
    assert!(rho_a[0][1]["im"].as_f64().unwrap().abs() < 1e-12);

    assert_eq!(outputs["joint"].as_array().unwrap().len(), 8);
    assert_eq!(outputs["rho_ab"].as_array().unwrap().len(), 4);
    assert!((outputs["d_a"].as_f64().unwrap() - 1.0 / 18.0).abs() < 1e-12);
    assert!((outputs["f2"].as_f64().unwrap() - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
    assert!((outputs["bloch_in"]["z"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((outputs["bloch_out"]["z"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-12);
}

#[test]
fn clone_at_the_optimum_shows_the_sqrt_half_shrink() {
    let out = eqcm(&[
        "clone", "--plane", "xy", "--angle", "0.3", "--lambda", "opt", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = parse_json(&out);
    let norm = |b: &Value| -> f64 {
        let (x, y, z) = (
            b["x"].as_f64().unwrap(),
            b["y"].as_f64().unwrap(),
            b["z"].as_f64().unwrap(),
        );
        (x * x + y * y + z * z).sqrt()
    };
    let ratio = norm(&v["outputs"]["bloch_out"]) / norm(&v["outputs"]["bloch_in"]);
    assert!((ratio - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    assert!((v["outputs"]["f1"].as_f64().unwrap() - 0.9238795325112867).abs() < 1e-9);
    let lambda_opt = 3.0 - 2.0 * std::f64::consts::SQRT_2;
    assert!((v["inputs"]["lambda"].as_f64().unwrap() - lambda_opt).abs() < 1e-15);
}

#[test]
fn clone_accepts_the_one_third_literal() {
    let out = eqcm(&["clone", "--lambda", "1/3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = parse_json(&out);
    assert!((v["inputs"]["lambda"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-15);
    let f2 = v["outputs"]["f2"].as_f64().unwrap();
    assert!((f2 - 0.75f64.sqrt()).abs() < 1e-12);
}

#[test]
fn clone_csv_is_a_usage_error() {
    let out = eqcm(&["clone", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn optimize_locates_the_distance_minimum() {
    let out = eqcm(&[
        "optimize", "--metric", "hs-one", "--min", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = parse_json(&out);
    let lambda_opt = 3.0 - 2.0 * std::f64::consts::SQRT_2;
    let lambda_star = v["outputs"]["lambda_star"].as_f64().unwrap();
    assert!((lambda_star - lambda_opt).abs() < 1e-6);
    let analytic = &v["outputs"]["analytic"];
    assert!((analytic["lambda"].as_f64().unwrap() - lambda_opt).abs() < 1e-15);
    let value_star = v["outputs"]["value_star"].as_f64().unwrap();
    assert!((value_star - analytic["value"].as_f64().unwrap()).abs() < 1e-10);
    let numeric = v["outputs"]["numeric_at_star"].as_f64().unwrap();
    assert!((numeric - value_star).abs() < 1e-9);
}

#[test]
fn optimize_locates_the_two_copy_fidelity_maximum() {
    let out = eqcm(&[
        "optimize",
        "--metric",
        "bures-two",
        "--max",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = parse_json(&out);
    let lambda_star = v["outputs"]["lambda_star"].as_f64().unwrap();
    assert!((lambda_star - 1.0 / 3.0).abs() < 1e-6);
    assert!((v["outputs"]["value_star"].as_f64().unwrap() - 0.75f64.sqrt()).abs() < 1e-10);
}

#[test]
fn optimize_requires_exactly_one_direction() {
    let neither = eqcm(&["optimize", "--metric", "hs-one"]);
    assert_eq!(neither.status.code(), Some(2));
    let both = eqcm(&["optimize", "--metric", "hs-one", "--min", "--max"]);
    assert_eq!(both.status.code(), Some(2));
}

#[test]
fn optimize_rejects_an_inverted_bracket() {
    let out = eqcm(&[
        "optimize", "--metric", "hs-one", "--min", "--lo", "0.5", "--hi", "0.2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_file_instead_of_stdout() {
    let path = std::env::temp_dir().join(format!("eqcm-cli-test-{}.csv", std::process::id()));
    let out = eqcm(&[
        "sweep",
        "--steps",
        "3",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("plane,lambda,"));
    assert_eq!(written.lines().count(), 4);
    std::fs::remove_file(&path).unwrap();
}
