use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn gvcp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gvcp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn canonical(name: &str) -> String {
    let out = gvcp(&["canonical", name]);
    assert!(out.status.success());
    stdout(&out)
}

fn analyze(path: &Path) -> (Value, i32) {
    let out = gvcp(&["analyze", path.to_str().unwrap()]);
    let code = out.status.code().unwrap();
    (serde_json::from_str(&stdout(&out)).unwrap(), code)
}

#[test]
fn analyze_canonical_forms() {
    let dir = TempDir::new().unwrap();
    let tau = write(dir.path(), "tau.json", &canonical("TAU0"));
    let (report, code) = analyze(&tau);
    assert_eq!(code, 0);
    assert_eq!(report["verdict"], "G2");
    assert_eq!(report["scale"], 1.0);
    assert_eq!(
        report["signature"],
        serde_json::json!([[-1.0, 6], [0.0, 1]])
    );

    let sigma = write(dir.path(), "sigma.json", &canonical("SIGMA0"));
    let (report, _) = analyze(&sigma);
    assert_eq!(report["verdict"], "SU3");
}

#[test]
fn analyze_zero_and_negative() {
    let dir = TempDir::new().unwrap();
    let zero = write(
        dir.path(),
        "zero.json",
        r#"{"dim": 7, "degree": 3, "terms": []}"#,
    );
    let out = gvcp(&["analyze", zero.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "{\n  \"verdict\": \"ZERO\"\n}");

    let split = write(
        dir.path(),
        "split.json",
        r#"{"dim": 6, "degree": 3, "terms": [
            {"indices": [1, 2, 3], "coeff": 1},
            {"indices": [4, 5, 6], "coeff": 1}]}"#,
    );
    let (report, code) = analyze(&split);
    assert_eq!(code, 0);
    assert_eq!(report["verdict"], "NOT_GVCP");
    let w = &report["witness"];
    assert_eq!(
        w["first"],
        serde_json::json!([1.0, 0.0, 0.0, 0.0, 0.0, 0.0])
    );
    let s = std::f64::consts::FRAC_1_SQRT_2;
    assert_eq!(w["second"], serde_json::json!([s, 0.0, 0.0, s, 0.0, 0.0]));
}

#[test]
fn analyze_sampled_mode_with_options() {
    let dir = TempDir::new().unwrap();
    let tau = write(dir.path(), "tau.json", &canonical("TAU0"));
    let p = tau.to_str().unwrap();
    let a = gvcp(&[
        "analyze",
        p,
        "--mode",
        "sampled",
        "--samples",
        "32",
        "--seed",
        "5",
        "--tol",
        "1e-8",
    ]);
    let b = gvcp(&[
        "analyze",
        p,
        "--mode",
        "sampled",
        "--samples",
        "32",
        "--seed",
        "5",
        "--tol",
        "1e-8",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let report: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(report["verdict"], "G2");
}

#[test]
fn malformed_inputs_exit_one() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (
            "syntax.json",
            "{\"dim\": 3,\n \"degree\": 3,\n \"terms\": [\n",
        ),
        (
            "order.json",
            "{\"dim\": 3,\n \"degree\": 3,\n \"terms\": [{\"indices\": [2, 1, 3], \"coeff\": 1}]}",
        ),
        (
            "dup.json",
            r#"{"dim": 4, "degree": 3, "terms": [{"indices": [1, 2, 3], "coeff": 1}, {"indices": [1, 2, 3], "coeff": 2}]}"#,
        ),
        ("degree.json", r#"{"dim": 4, "degree": 2, "terms": []}"#),
    ];
    for (name, text) in cases {
        let path = write(dir.path(), name, text);
        let out = gvcp(&["analyze", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(1), "{name}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.starts_with("error: "), "{name}: {err}");
        if name != "dup.json" && name != "degree.json" {
            assert!(err.contains("line"), "{name}: {err}");
        }
    }
    let out = gvcp(&["analyze", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn canonical_tau0_has_seven_terms() {
    let v: Value = serde_json::from_str(&canonical("TAU0")).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 7);
    assert_eq!(v["dim"], 7);
    assert_eq!(gvcp(&["canonical", "NOPE"]).status.code(), Some(1));
}

#[test]
fn lift_then_restrict_reproduces_sigma0() {
    let dir = TempDir::new().unwrap();
    let sigma_text = canonical("SIGMA0");
    let sigma = write(dir.path(), "sigma.json", &sigma_text);
    let lifted = dir.path().join("lifted.json");
    let out = gvcp(&[
        "lift",
        sigma.to_str().unwrap(),
        "--out",
        lifted.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&lifted).unwrap(), canonical("TAU0"));

    let out = gvcp(&[
        "restrict",
        lifted.to_str().unwrap(),
        "--vector",
        "0,0,0,0,0,0,1",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), sigma_text);
}

#[test]
fn restrict_rejects_non_unit_vector() {
    let dir = TempDir::new().unwrap();
    let tau = write(dir.path(), "tau.json", &canonical("TAU0"));
    let out = gvcp(&[
        "restrict",
        tau.to_str().unwrap(),
        "--vector",
        "1,1,0,0,0,0,0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = gvcp(&["restrict", tau.to_str().unwrap(), "--vector", "1,0,0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn conjugate_is_seeded_and_keeps_verdict() {
    let dir = TempDir::new().unwrap();
    let sigma = write(dir.path(), "sigma.json", &canonical("SIGMA0"));
    let a = gvcp(&["conjugate", sigma.to_str().unwrap(), "--seed", "9"]);
    let b = gvcp(&["conjugate", sigma.to_str().unwrap(), "--seed", "9"]);
    let c = gvcp(&["conjugate", sigma.to_str().unwrap(), "--seed", "10"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let conj = write(dir.path(), "conj.json", &stdout(&a));
    let (report, code) = analyze(&conj);
    assert_eq!(code, 0);
    assert_eq!(report["verdict"], "SU3");
    assert!((report["scale"].as_f64().unwrap() - 1.0).abs() < 1e-7);
}

#[test]
fn su3_check_reports_small_residual() {
    let out = gvcp(&["su3-check", "--samples", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["passed"], true);
    assert!(report["max_residual"].as_f64().unwrap() <= 1e-10);
    assert_eq!(report["basis_max_residual"], 0.0);
    assert_eq!(gvcp(&["su3-check", "--samples", "100"]).stdout, out.stdout);
}

#[test]
fn anomaly_exit_code() {
    // a constant signature in dimension 5 is impossible, so a forced
    // sampled check with a single sample (no comparison) surfaces ANOMALY
    let dir = TempDir::new().unwrap();
    let path = write(
        dir.path(),
        "r5.json",
        r#"{"dim": 5, "degree": 3, "terms": [{"indices": [1, 2, 3], "coeff": 1}, {"indices": [3, 4, 5], "coeff": 1}]}"#,
    );
    let out = gvcp(&[
        "analyze",
        path.to_str().unwrap(),
        "--mode",
        "sampled",
        "--samples",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], "ANOMALY");
}
