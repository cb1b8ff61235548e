//! End-to-end tests of the `curvefam` binary: outputs, exit codes and
//! determinism of the file artifacts.

use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn curvefam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvefam"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("curvefam-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn analyze_reports_reference_invariants() {
    let out = curvefam(&["analyze", "--surface", "ellip"]);
    let v = stdout_json(&out);
    assert_eq!(v["surface"], "ellip");
    assert_eq!(v["k"], 4.0);
    assert!((v["kappa_y"].as_f64().unwrap() - std::f64::consts::SQRT_2).abs() < 1e-12);
    assert!((v["dsv_dx"].as_f64().unwrap() + 2.0).abs() < 1e-12);
    assert_eq!(v["regular_y"], "regular");
}

#[test]
fn analyze_accepts_degrees() {
    let rad = curvefam(&["analyze", "--surface", "hyp", "--theta", "2.356194490192345"]);
    let deg = curvefam(&["analyze", "--surface", "hyp", "--theta", "135", "--degrees"]);
    let a = stdout_json(&rad);
    let b = stdout_json(&deg);
    let ka = a["kappa_y"].as_f64().unwrap();
    let kb = b["kappa_y"].as_f64().unwrap();
    assert!((ka - kb).abs() < 1e-12, "{ka} vs {kb}");
}

#[test]
fn analyze_accepts_expressions_and_negative_coordinates() {
    let out = curvefam(&["analyze", "--surface", "x^2 - y^2", "--x", "-0.25", "--y", "-0.5"]);
    let v = stdout_json(&out);
    assert_eq!(v["surface"], "x^2 - y^2");
    assert_eq!(v["k"].as_f64().unwrap(), {
        // K = -4 / (1 + 4x^2 + 4y^2)^2 at (-0.25, -0.5)
        let denom: f64 = 1.0 + 4.0 * 0.0625 + 4.0 * 0.25;
        -4.0 / (denom * denom)
    });
}

#[test]
fn syntax_errors_exit_2_with_position() {
    let out = curvefam(&["analyze", "--surface", "x^(2"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("byte 3"), "stderr: {stderr}");
}

#[test]
fn domain_errors_exit_3() {
    let out = curvefam(&["analyze", "--surface", "1/x", "--x", "0"]);
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("division by zero"), "stderr: {stderr}");
}

#[test]
fn signs_agree_on_saddle_fixture() {
    let out = curvefam(&[
        "signs", "--surface", "hyp", "--theta", "2.4", "--phi", "0.8", "--x", "0.3", "--y",
        "0.2",
    ]);
    let v = stdout_json(&out);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 4);
    for c in checks {
        assert_eq!(c["verdict"], "agree", "{c}");
    }
}

#[test]
fn critical_signs_handle_all_builtin_cases() {
    // definite and indefinite Hessians agree
    for surface in ["ellip", "hyp"] {
        let out = curvefam(&["signs", "--surface", surface, "--critical", "--phi", "0.7"]);
        let v = stdout_json(&out);
        for c in v["checks"].as_array().unwrap() {
            assert_eq!(c["verdict"], "agree", "{surface}: {c}");
        }
    }

    // parabolic point: K(0) = 0 makes every factor indeterminate
    let out = curvefam(&["signs", "--surface", "parab", "--critical", "--phi", "0.7"]);
    let v = stdout_json(&out);
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["verdict"], "skipped", "{c}");
    }

    // non-critical origin is refused with exit 4
    let out = curvefam(&["signs", "--surface", "sin_xy", "--critical"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_writes_deterministic_reports() {
    let p1 = temp_path("verify-a.json");
    let p2 = temp_path("verify-b.json");
    for p in [&p1, &p2] {
        let out = curvefam(&[
            "verify",
            "--samples",
            "400",
            "--seed",
            "7",
            "--output",
            p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let stdout = String::from_utf8_lossy(&out.stdout);
        assert!(stdout.contains("result: PASS"), "{stdout}");
    }
    let a = std::fs::read(&p1).unwrap();
    let b = std::fs::read(&p2).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "same seed and config must give identical report bytes");
    let report: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["seed"], 7);
    assert!(report.get("runtime_seconds").is_none());
    let _ = std::fs::remove_file(&p1);
    let _ = std::fs::remove_file(&p2);
}

#[test]
fn verify_with_zero_samples_passes_vacuously() {
    let p = temp_path("verify-empty.json");
    let out = curvefam(&["verify", "--samples", "0", "--output", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&std::fs::read(&p).unwrap()).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["samples"], 0);
    let _ = std::fs::remove_file(&p);
}

#[test]
fn verify_accepts_custom_surfaces() {
    let p = temp_path("verify-custom.json");
    let out = curvefam(&[
        "verify",
        "--samples",
        "200",
        "--surfaces",
        "ellip,x^2 + y^2",
        "--output",
        p.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&std::fs::read(&p).unwrap()).unwrap();
    assert_eq!(report["surfaces"], serde_json::json!(["ellip", "x^2 + y^2"]));
    let _ = std::fs::remove_file(&p);

    let bad = curvefam(&["verify", "--samples", "10", "--surfaces", "x^("]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn render_writes_svg_with_requested_curve_count() {
    let p = temp_path("render.svg");
    let out = curvefam(&[
        "render",
        "--surface",
        "parab",
        "--curves",
        "7",
        "--points",
        "40",
        "--output",
        p.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&p).unwrap();
    assert_eq!(svg.matches("<path ").count(), 7);
    assert!(svg.contains(r#"viewBox="0 0 800 600""#));
    let _ = std::fs::remove_file(&p);
}

#[test]
fn render_to_stdout_draws_both_families() {
    let out = curvefam(&[
        "render", "--surface", "sin_xy", "--family", "both", "--curves", "4", "--points",
        "16",
    ]);
    assert!(out.status.success());
    let svg = String::from_utf8(out.stdout).unwrap();
    assert_eq!(svg.matches("<path ").count(), 8);
    assert!(svg.contains("#d62728") && svg.contains("#1f77b4"));
}

#[test]
fn render_rejects_degenerate_geometry() {
    let out = curvefam(&["render", "--surface", "flat", "--points", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = curvefam(&["render", "--surface", "flat", "--x-min", "2", "--x-max", "-2"]);
    assert_eq!(out.status.code(), Some(2));
}
