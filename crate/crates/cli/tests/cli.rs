//! End-to-end tests driving the `gmrotor` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn gmrotor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gmrotor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

fn parse_csv(body: &str) -> (serde_json::Value, Vec<String>, Vec<Vec<String>>) {
    let mut lines = body.lines();
    let meta_line = lines.next().expect("metadata line");
    assert!(meta_line.starts_with("# "), "missing metadata prefix");
    let metadata: serde_json::Value =
        serde_json::from_str(&meta_line[2..]).expect("metadata is JSON");
    let header: Vec<String> = lines
        .next()
        .expect("header")
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    (metadata, header, rows)
}

#[test]
fn kick_coeffs_dc_value_and_metadata() {
    let out = gmrotor(&["kick-coeffs", "--strength", "1.0", "--bandwidth", "8"]);
    assert!(out.status.success());
    let (meta, header, rows) = parse_csv(&stdout(&out));
    assert_eq!(meta["command"], "kick-coeffs");
    assert_eq!(meta["precision"]["rotation_fixed_bits"], 128);
    assert_eq!(header, vec!["m", "re", "im", "abs"]);
    assert_eq!(rows.len(), 17);
    let dc = rows.iter().find(|r| r[0] == "0").unwrap();
    let re: f64 = dc[1].parse().unwrap();
    assert!((re - 2.0 / std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "classical-diffusion",
        "--steps-list",
        "34,144",
        "--momentum-bound",
        "3",
        "--samples",
        "2000",
        "--seed",
        "9",
    ];
    let a = gmrotor(&args);
    let b = gmrotor(&args);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout, "same config+seed must be byte-stable");
}

#[test]
fn diffusion_trivial_row() {
    let out = gmrotor(&[
        "classical-diffusion",
        "--steps-list",
        "1",
        "--momentum-bound",
        "2",
        "--samples",
        "0",
    ]);
    assert!(out.status.success());
    let (_, header, rows) = parse_csv(&stdout(&out));
    assert_eq!(
        header,
        vec!["n", "momentum_bound", "exact_measure", "montecarlo_measure", "montecarlo_stderr"]
    );
    let exact: f64 = rows[0][2].parse().unwrap();
    assert!((exact - std::f64::consts::TAU).abs() < 1e-12);
    assert_eq!(rows[0][3], ""); // MC disabled -> empty cells
}

#[test]
fn diffusion_search_reports_metadata() {
    let out = gmrotor(&[
        "classical-diffusion",
        "--search",
        "--max-steps",
        "700",
        "--target-measure",
        "0.1",
        "--samples",
        "0",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let search = &doc["metadata"]["search"];
    assert_eq!(search["achieved"], false);
    assert!(search["best_n"].as_u64().unwrap() <= 700);
    assert!(doc["rows"].as_array().unwrap().len() == 1);
}

#[test]
fn diffusion_histogram_with_trinomial() {
    let out = gmrotor(&[
        "classical-diffusion",
        "--fib-indices",
        "1,7",
        "--histogram",
        "--trinomial",
    ]);
    assert!(out.status.success());
    let (meta, header, rows) = parse_csv(&stdout(&out));
    assert_eq!(header, vec!["value", "measure", "fraction", "trinomial_mass"]);
    assert_eq!(meta["config"]["trinomial"]["compositions"], 2);
    // n = q_1 + q_7 = 36: even parity, so every value is even and the
    // fractions sum to 1.
    let total: f64 = rows.iter().map(|r| r[2].parse::<f64>().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-9);
    for row in &rows {
        let v: i64 = row[0].parse().unwrap();
        assert_eq!(v % 2, 0);
        assert!(!row[3].is_empty(), "even values carry a model mass");
    }
}

#[test]
fn lemma_checks_pass_and_exit_zero() {
    for selector in ["convergents", "4.1", "4.2", "4.3", "4.4"] {
        let out = gmrotor(&[
            "lemmas",
            "--selector",
            selector,
            "--max-index",
            "12",
            "--max-k",
            "20000",
            "--samples",
            "50",
        ]);
        assert!(out.status.success(), "selector {selector} failed");
        let (_, header, rows) = parse_csv(&stdout(&out));
        assert_eq!(header.last().map(String::as_str), Some("pass"));
        assert!(rows.iter().all(|r| r.last().unwrap() == "pass"));
    }
}

#[test]
fn quantum_localize_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path: PathBuf = dir.path().join("run.csv");
    let out = gmrotor(&[
        "quantum-localize",
        "--initial",
        "gaussian:sigma=3",
        "--steps",
        "40",
        "--bandwidth",
        "64",
        "--record-every",
        "10",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&path).unwrap();
    let (meta, header, rows) = parse_csv(&body);
    assert_eq!(header, vec!["n", "u", "norm_leak", "region", "theta", "p"]);
    assert_eq!(rows.len(), 5); // steps 0, 10, 20, 30, 40
    assert_eq!(rows[0][0], "0");
    assert_eq!(rows.last().unwrap()[0], "40");
    assert!(meta["cumulative_norm_leak"].as_f64().unwrap() >= 0.0);
    // A σ=3 packet at golden rotation stays in the quantum region.
    assert!(rows.iter().all(|r| r[3] == "quantum"));
}

#[test]
fn trace_records_gaps() {
    let out = gmrotor(&[
        "trace",
        "--initial",
        "mode:0",
        "--steps",
        "20",
        "--bandwidth",
        "64",
        "--record-every",
        "5",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0][0], 0);
    assert_eq!(rows[0][5], 0.0); // zero gaps at step 0
    for row in rows {
        let gap = row[5].as_f64().unwrap();
        assert!((0.0..=std::f64::consts::PI + 1e-12).contains(&gap));
    }
}

#[test]
fn configuration_errors_exit_two() {
    let cases: Vec<Vec<&str>> = vec![
        // free-float lambda is rejected by design
        vec!["quantum-localize", "--lambda", "3.14", "--steps", "1", "--bandwidth", "8"],
        // K = 0 violates the model invariant
        vec!["quantum-localize", "--kick", "0", "--steps", "1", "--bandwidth", "8"],
        // malformed initial state
        vec!["quantum-localize", "--initial", "blob:3", "--steps", "1", "--bandwidth", "8"],
        // rational with zero denominator
        vec!["trace", "--lambda", "rational:1/0", "--steps", "1"],
        // diffusion without a step source
        vec!["classical-diffusion"],
    ];
    for args in cases {
        let out = gmrotor(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn unknown_flag_exits_two() {
    let out = gmrotor(&["lemmas", "--selector", "4.2", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}
