//! End-to-end tests of the binary: exit codes, file artifacts and report
//! contents for every subcommand.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gabortorus"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin().args(args).current_dir(dir).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn spectrogram_of_an_impulse_peaks_at_time_zero() {
    let tmp = tempfile::tempdir().unwrap();
    write(tmp.path(), "delta.csv", "index,re,im\n0,1,0\n");
    write(
        tmp.path(),
        "cfg.json",
        r#"{"model": {"kind": "finite", "len": 16}, "signal": "delta.csv"}"#,
    );
    let out = run(&["spectrogram", "--config", "cfg.json", "--out", "art"], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let csv = fs::read_to_string(tmp.path().join("art/spectrogram.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "x,omega,re,im");
    let (mut best_x, mut best_mag) = (f64::NAN, -1.0);
    for line in lines {
        let f: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        let mag = (f[2] * f[2] + f[3] * f[3]).sqrt();
        if mag > best_mag {
            (best_x, best_mag) = (f[0], mag);
        }
    }
    assert_eq!(best_x, 0.0, "impulse energy should localize at x = 0");

    let pgm = fs::read(tmp.path().join("art/spectrogram.pgm")).unwrap();
    assert!(pgm.starts_with(b"P5"), "magnitude image should be binary PGM");
}

#[test]
fn seeded_spectrogram_runs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    write(tmp.path(), "cfg.json", r#"{"model": {"kind": "finite", "len": 32}}"#);
    for out_dir in ["a", "b"] {
        let out = run(
            &["spectrogram", "--config", "cfg.json", "--deterministic", "--seed", "42", "--out", out_dir],
            tmp.path(),
        );
        assert!(out.status.success());
    }
    for name in ["spectrogram.csv", "spectrogram.pgm"] {
        let a = fs::read(tmp.path().join("a").join(name)).unwrap();
        let b = fs::read(tmp.path().join("b").join(name)).unwrap();
        assert_eq!(a, b, "{name} should be reproducible from the seed");
    }
}

#[test]
fn unreadable_input_and_malformed_config_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    write(tmp.path(), "bad.json", "not json at all");
    let out = run(&["framecheck", "--config", "bad.json"], tmp.path());
    assert_eq!(out.status.code(), Some(2));

    write(tmp.path(), "missing.json", r#"{"signal": "nonexistent.csv"}"#);
    let out = run(&["spectrogram", "--config", "missing.json"], tmp.path());
    assert_eq!(out.status.code(), Some(2));

    write(tmp.path(), "short.json", r#"{"model": {"kind": "finite", "len": 4}, "signal": "odd.csv"}"#);
    write(tmp.path(), "odd.csv", "index,re,im\n9,1,0\n");
    let out = run(&["spectrogram", "--config", "short.json"], tmp.path());
    assert_eq!(out.status.code(), Some(2), "out-of-range sample index is an input error");
}

#[test]
fn zero_window_exits_3() {
    let tmp = tempfile::tempdir().unwrap();
    write(tmp.path(), "zero.csv", "index,re,im\n0,0,0\n");
    write(
        tmp.path(),
        "cfg.json",
        r#"{"model": {"kind": "finite", "len": 8}, "window": {"file": {"path": "zero.csv"}}}"#,
    );
    let out = run(&["spectrogram", "--config", "cfg.json"], tmp.path());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn framecheck_default_lattice_is_a_frame_with_tiny_residuals() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(&["framecheck", "--out", "."], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("framecheck.json")).unwrap())
            .unwrap();
    assert_eq!(report["is_frame"], serde_json::json!(true));
    assert!(report["A"].as_f64().unwrap() > 0.0);
    assert!(report["janssen_residual"].as_f64().unwrap() <= 1e-10);
    assert!(report["figa_residual"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn theta_report_residual_and_density_sweep() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(&["theta", "--out", "."], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("theta.json")).unwrap()).unwrap();
    assert!(report["functional_eq_residual"].as_f64().unwrap() <= 1e-8);
    assert!(report["tail_bound"].as_f64().unwrap() < 1e-12);
    let sweep = report["invertibility_sweep"].as_array().unwrap();
    for row in sweep {
        let ab = row["ab"].as_f64().unwrap();
        let invertible = row["invertible"].as_bool().unwrap();
        assert_eq!(invertible, ab < 1.0, "verdict should flip exactly at density 1 (ab = {ab})");
    }
}

#[test]
fn theta_with_insufficient_radius_exits_4() {
    let tmp = tempfile::tempdir().unwrap();
    write(tmp.path(), "cfg.json", r#"{"radius": 2.0}"#);
    let out = run(&["theta", "--config", "cfg.json"], tmp.path());
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("insufficient radius"));
}

#[test]
fn verify_all_prints_a_full_pass_matrix() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(&["verify-all", "--seed", "7"], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(stdout.matches("[PASS]").count(), 10);
    assert_eq!(stdout.matches("[FAIL]").count(), 0);
    assert!(stdout.contains("10/10 criteria passed"));
}
