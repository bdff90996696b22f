use std::path::Path;
use std::process::{Command, Output};

use hypineq::theory::{ExponentPair, ParamPair};
use hypineq::verify::{g_value, SWEEP_HEADER};
use hypineq::SeriesConfig;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypineq")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_prints_seventeen_digits() {
    let o = run(&["eval", "--a", "0.5", "--b", "0.5", "--c", "1", "--x", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 1.1803405990160372).abs() < 1e-15);
}

#[test]
fn eval_at_one_uses_gauss_sum() {
    let o = run(&["eval", "--a", "-0.5", "--b", "0.5", "--c", "1", "--at-one"]);
    assert_eq!(o.status.code(), Some(0));
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 2.0 / std::f64::consts::PI).abs() < 1e-14);
}

#[test]
fn domain_and_usage_errors_exit_two() {
    assert_eq!(run(&["eval", "--a", "0.5", "--b", "0.5", "--c", "1", "--x", "1.5"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--a", "0.5", "--b", "0.5", "--c", "-1", "--x", "0.5"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--check", "no_such_check"]).status.code(), Some(2));
    assert_eq!(run(&["constants", "--a", "1.5", "--b", "0.5", "--c", "2", "--d", "3"]).status.code(), Some(2));
}

#[test]
fn passing_check_exits_zero() {
    let o = run(&["verify", "--check", "sandwich", "--a", "0.5", "--b", "0.5", "--c", "2", "--d", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["passed"], Value::Bool(true));
}

#[test]
fn alpha_threshold_exits_one() {
    let args = ["verify", "--check", "sharpness_alpha", "--a", "0.5", "--b", "0.5", "--c", "2", "--d", "3"];
    let o = run(&args);
    assert_eq!(o.status.code(), Some(1));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["checks"][0]["status"], "fail");
    assert!(!r["checks"][0]["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn roots_reports_both_zeros() {
    let o = run(&["roots"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let text = r.to_string();
    assert!(text.contains("0.0369626424462738"), "{text}");
    assert!(text.contains("0.535587232739264"), "{text}");
}

fn read_sweep(path: &Path) -> Vec<Vec<f64>> {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap().split(',').collect::<Vec<_>>(), SWEEP_HEADER);
    lines.map(|l| l.split(',').map(|s| s.parse().unwrap()).collect()).collect()
}

#[test]
fn sweep_round_trips_against_fresh_evaluation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let cfg_path = dir.path().join("grid.conf");
    std::fs::write(&cfg_path, "# small grid\nn_points = 40\nspacing = uniform\n").unwrap();
    let o = run(&[
        "sweep", "--a", "0.3", "--b", "1.5", "--c", "2", "--d", "3", "--delta", "-0.1",
        "--config", cfg_path.to_str().unwrap(), "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = read_sweep(&path);
    assert_eq!(rows.len(), 40);
    let pp = ParamPair::new(0.3, 1.5).unwrap();
    let ep = ExponentPair::new(2.0, 3.0).unwrap();
    let cfg = SeriesConfig::default();
    for row in &rows {
        assert_eq!(&row[..5], &[0.3, 1.5, 2.0, 3.0, -0.1]);
        let g = g_value(pp, ep, -0.1, row[5], &cfg).unwrap();
        assert_eq!(row[6], g, "x = {}", row[5]);
        // the sandwich columns bracket F_d
        assert!(row[9] < row[8] && row[8] < row[10]);
    }
}

#[test]
fn suite_json_independent_of_workers() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("small.conf");
    std::fs::write(&cfg_path, "n_points = 64\nrandom_pairs = 1\nlemma_grid = 32\n").unwrap();
    let cfg = cfg_path.to_str().unwrap();
    let one = run(&["verify", "--suite", "--config", cfg, "--workers", "1"]);
    let many = run(&["verify", "--suite", "--config", cfg, "--workers", "3"]);
    assert_eq!(one.status.code(), Some(0), "{}", String::from_utf8_lossy(&one.stderr));
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn csv_report_has_one_row_per_check() {
    let o = run(&["verify", "--check", "lemma_g", "--a", "0.4", "--b", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 2, "{text}");
}
