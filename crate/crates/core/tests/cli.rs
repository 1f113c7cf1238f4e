//! End-to-end checks of the binary: exit codes, CSV artifacts, skip
//! handling, tolerance overrides, and byte-identical seeded reruns.

use std::path::Path;
use std::process::{Command, Output};

fn infolab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_infolab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("config.json");
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn verify_full_gaussian_suite_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        &format!(
            r#"{{
                "prior": {{"kind": "gaussian", "mu": 0.0, "var": 1.0}},
                "noise": {{"kind": "gaussian", "mu": 0.0, "var": 1.0}},
                "a_values": [0.5, 1.0, 2.0],
                "output_dir": "{}"
            }}"#,
            dir.path().display()
        ),
    );
    let out = infolab(&["verify", &cfg]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));

    let csv = std::fs::read_to_string(dir.path().join("identities.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "identity_name,channel_desc,a,lhs,rhs,abs_residual,rel_residual,tolerance,status,notes"
    );
    // One row per (verifier, a): 13 verifiers by 3 noise scales.
    assert_eq!(lines.len(), 1 + 13 * 3);
    assert!(!csv.contains("FAIL"));
}

#[test]
fn verify_rejects_negative_noise_scale() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{
            "prior": {"kind": "gaussian", "mu": 0.0, "var": 1.0},
            "noise": {"kind": "gaussian", "mu": 0.0, "var": 1.0},
            "a_values": [-1.0]
        }"#,
    );
    let out = infolab(&["verify", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("a must be positive"));
}

#[test]
fn verify_rejects_unknown_verifier() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{
            "prior": {"kind": "gaussian", "mu": 0.0, "var": 1.0},
            "noise": {"kind": "gaussian", "mu": 0.0, "var": 1.0},
            "a_values": [1.0],
            "identities": ["no_such_check"]
        }"#,
    );
    let out = infolab(&["verify", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("no_such_check"));
}

#[test]
fn verify_missing_config_is_usage_error() {
    let out = infolab(&["verify", "/definitely/not/here.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_marks_incompatible_channels_skipped() {
    // A two-sided prior cannot feed a one-sided noise kernel; the rows are
    // reported as skipped and do not fail the run.
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        &format!(
            r#"{{
                "prior": {{"kind": "student_t", "nu": 3.0}},
                "noise": {{"kind": "exponential"}},
                "a_values": [1.0],
                "identities": ["entropy_slope_exponential"],
                "output_dir": "{}"
            }}"#,
            dir.path().display()
        ),
    );
    let out = infolab(&["verify", &cfg]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let csv = std::fs::read_to_string(dir.path().join("identities.csv")).unwrap();
    assert!(csv.contains("SKIPPED"));
}

#[test]
fn verify_tolerance_override_can_force_failure() {
    // An absurdly tight override flips a passing identity to FAIL and the
    // exit code to 1, which exercises the override plumbing end to end.
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        &format!(
            r#"{{
                "prior": {{"kind": "gaussian", "mu": 0.0, "var": 1.0}},
                "noise": {{"kind": "gaussian", "mu": 0.0, "var": 1.0}},
                "a_values": [1.0],
                "identities": ["de_bruijn"],
                "tolerances": {{"de_bruijn": 1e-18}},
                "output_dir": "{}"
            }}"#,
            dir.path().display()
        ),
    );
    let out = infolab(&["verify", &cfg]);
    assert_eq!(out.status.code(), Some(1));
    let csv = std::fs::read_to_string(dir.path().join("identities.csv")).unwrap();
    assert!(csv.contains("FAIL"));
}

#[test]
fn bounds_requires_gaussian_noise() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{
            "prior": {"kind": "truncated_gaussian", "mu": 1.0, "var": 1.0, "lo": 0.0, "hi": 3.0},
            "noise": {"kind": "exponential"},
            "a_values": [1.0]
        }"#,
    );
    let out = infolab(&["bounds", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("gaussian noise"));
}

#[test]
fn bounds_missing_noise_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{
            "prior": {"kind": "gaussian", "mu": 0.0, "var": 1.0},
            "a_values": [1.0]
        }"#,
    );
    let out = infolab(&["bounds", &cfg]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounds_gaussian_prior_notes_equality() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        &format!(
            r#"{{
                "prior": {{"kind": "gaussian", "mu": 0.0, "var": 1.0}},
                "noise": {{"kind": "gaussian", "mu": 0.0, "var": 1.0}},
                "a_values": [1.0, 0.1],
                "mc_n": 50000,
                "seed": 11,
                "output_dir": "{}"
            }}"#,
            dir.path().display()
        ),
    );
    let out = infolab(&["bounds", &cfg]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("coincide"));
    let csv = std::fs::read_to_string(dir.path().join("bounds.csv")).unwrap();
    assert!(csv.lines().any(|l| l == "snr_db,a,mmse,bcrlb,new_lb,mc_error"));
    // Rows come out ordered by increasing SNR, so decreasing noise scale.
    assert_eq!(csv.lines().count(), 3 + 2);
}

#[test]
fn figure1_seeded_reruns_are_byte_identical() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for dir in [&dir_a, &dir_b] {
        let out = infolab(&[
            "figure1",
            "--out",
            &dir.path().to_string_lossy(),
            "--seed",
            "5",
            "--points",
            "3",
        ]);
        assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    }
    let csv_a = std::fs::read(dir_a.path().join("figure1.csv")).unwrap();
    let csv_b = std::fs::read(dir_b.path().join("figure1.csv")).unwrap();
    assert!(!csv_a.is_empty());
    assert_eq!(csv_a, csv_b);

    let plt = std::fs::read_to_string(dir_a.path().join("figure1.plt")).unwrap();
    assert!(plt.contains("figure1.csv"));
}

#[test]
fn figure1_rejects_degenerate_grid() {
    let out = infolab(&["figure1", "--points", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let out = infolab(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let help = infolab(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
}
