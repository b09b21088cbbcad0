//! End-to-end checks of the `newton-center` binary: exit codes, JSON
//! certificate emission, and CSV output shapes.

use assert_cmd::Command;
use predicates::prelude::*;

fn bin() -> Command {
    Command::cargo_bin("newton-center").expect("binary builds")
}

#[test]
fn analyze_reports_global_center() {
    bin()
        .args(["analyze", "y' = -x - x^3*y^2", "--no-numeric"])
        .assert()
        .success()
        .stdout(predicate::str::contains("global center: true (condition G1)"));
}

#[test]
fn analyze_writes_valid_certificate_json() {
    let dir = std::env::temp_dir().join("newton-center-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cert.json");
    bin()
        .args(["analyze", "y' = -x + y^3", "--no-numeric", "--json"])
        .arg(&path)
        .assert()
        .success();
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["monodromy"]["monodromic"], false);
    assert_eq!(doc["system"]["expression"], "y' = -x + y^3");
}

#[test]
fn parse_error_exits_one_with_offset() {
    bin()
        .args(["analyze", "y' = x + "])
        .assert()
        .code(1)
        .stderr(predicate::str::contains("parse error at byte 9"));
}

#[test]
fn kukles_grid_agrees_and_emits_csv() {
    let assert = bin().args(["kukles", "--grid", "n=3"]).assert().success();
    let out = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("delta,a_n0,a_n11,a_n22,a_n33,predicate,pipeline,agree")
    );
    assert!(lines.clone().count() > 1000, "full grid should be swept");
    assert!(lines.all(|l| l.ends_with(",true")), "all rows must agree");
}

#[test]
fn lienard_single_instance_cross_checks() {
    bin()
        .args(["lienard", "y' = -x^3 + x*y"])
        .assert()
        .success()
        .stdout(predicate::str::contains("monodromic at infinity: true (L2)"));
    bin()
        .args(["lienard", "y' = -x^3 + 3*x*y"])
        .assert()
        .success()
        .stdout(predicate::str::contains("monodromic at infinity: false"));
}

#[test]
fn simulate_emits_trajectory_csv() {
    let assert = bin()
        .args(["simulate", "y' = -x", "--ic", "1,0"])
        .assert()
        .success()
        .stderr(predicate::str::contains("section return"));
    let out = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
    assert!(out.starts_with("t,x,y\n"));
    assert!(out.lines().count() > 10);
}

#[test]
fn period_emits_table_csv() {
    let assert = bin()
        .args(["period", "y' = -x", "--amplitudes", "1,2"])
        .assert()
        .success();
    let out = String::from_utf8(assert.get_output().stdout.clone()).unwrap();
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "amplitude,period,converged,refinement_error");
    assert_eq!(lines.len(), 3);
    // The harmonic oscillator has period 2*pi at every amplitude.
    for line in &lines[1..] {
        let period: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!((period - std::f64::consts::TAU).abs() < 1e-6, "{line}");
    }
}
