use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn framecert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_framecert")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn write(dir: &Path, name: &str, v: Value) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, v.to_string()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn bounds_of_orthonormal_basis() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "onb.json", json!({"dimension": 2, "vectors": [[1, 0], [0, 1]]}));
    let out = framecert(&["bounds", s(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["frame_bounds"], json!({"lower": 1.0, "upper": 1.0}));
    assert_eq!(v["is_frame"], json!(true));
    assert_eq!(v["is_riesz"], json!(true));
    assert_eq!(v["excess"], json!(0));
    assert_eq!(v["rank"], json!(2));
    for key in ["riesz_bounds", "sequence_bounds"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn malformed_row_is_a_parse_error() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "bad.json", json!({"dimension": 2, "vectors": [[1, 0], [0, 1, 5]]}));
    let out = framecert(&["bounds", s(&f)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("vectors[1]"), "{err}");
    assert!(out.stdout.is_empty());

    fs::write(dir.path().join("syntax.json"), "{\"dimension\": 2,\n \"vectors\": [[1, 0]\n").unwrap();
    let out = framecert(&["bounds", s(&dir.path().join("syntax.json"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}

#[test]
fn certify_identical_files() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "f.json", json!({"dimension": 2, "vectors": [[1, 0], [0, 1], [1, 1]]}));
    let out = framecert(&["certify", "thm21", s(&f), s(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["hypothesis_values"]["mu"], json!(0.0));
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        ["actual", "enclosed", "extras", "hypothesis_ok", "hypothesis_values", "predicted", "series_traces", "theorem"]
    );
    assert_eq!(v["theorem"], json!("thm21"));
}

#[test]
fn unknown_theorem_and_dimension_mismatch() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "f.json", json!({"dimension": 2, "vectors": [[1, 0], [0, 1]]}));
    let g = write(dir.path(), "g.json", json!({"dimension": 3, "vectors": [[1, 0, 0], [0, 1, 0]]}));
    let out = framecert(&["certify", "thm99", s(&f), s(&f)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown theorem"));
    let out = framecert(&["certify", "thm21", s(&f), s(&g)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dimension mismatch"));
}

#[test]
fn christensen_flags_and_hypothesis_exit() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "f.json", json!({"dimension": 2, "vectors": [[1, 0], [0, 1]]}));
    let g = write(dir.path(), "g.json", json!({"dimension": 2, "vectors": [[1.1, 0], [0, 1]]}));
    let out = framecert(&["certify", "christensen", s(&f), s(&g), "--lambda", "0", "--mu", "0.1", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["extras"]["seed"], json!(3));
    // an understated μ is caught by the sampled check
    let out = framecert(&["certify", "christensen", s(&f), s(&g), "--mu", "0.01"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gallery_remark22_round_trip() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().join("r22");
    let out = framecert(&["gallery", "remark22", "--depth", "6", "--out", s(&out_dir)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let summary: Value = serde_json::from_str(&fs::read_to_string(out_dir.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary, stdout_json(&out));

    let f = out_dir.join("f.json");
    let h = out_dir.join("h.json");
    let thm21 = framecert(&["certify", "thm21", s(&f), s(&h)]);
    assert_eq!(thm21.status.code(), Some(0));
    assert!(stdout_json(&thm21)["hypothesis_values"]["mu"].as_f64().unwrap() < 1.0);
    assert_eq!(stdout_json(&thm21), summary["certificates"]["thm21"]);

    let qc = framecert(&["certify", "qc", s(&f), s(&h)]);
    assert_eq!(qc.status.code(), Some(1));
    assert_eq!(stdout_json(&qc), summary["certificates"]["qc"]);

    let bounds = framecert(&["bounds", s(&h)]);
    assert_eq!(stdout_json(&bounds), summary["bounds"]["h"]);
}

#[test]
fn gallery_ex22_ratios_and_ex21_bounds() {
    let dir = TempDir::new().unwrap();
    let out = framecert(&["gallery", "ex22", "--depth", "5", "--out", s(&dir.path().join("a"))]);
    assert_eq!(out.status.code(), Some(0));
    let ratios: Vec<f64> = serde_json::from_value(stdout_json(&out)["ratios"].clone()).unwrap();
    let want = [1.0, 1.0 / 9.0, 1.0 / 25.0, 1.0 / 49.0, 1.0 / 81.0];
    assert_eq!(ratios.len(), 5);
    for (r, w) in ratios.iter().zip(want) {
        assert!((r - w).abs() < 1e-15);
    }

    let out = framecert(&["gallery", "ex21", "--depth", "2", "--out", s(&dir.path().join("b"))]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let fb = &v["bounds"]["f"]["frame_bounds"];
    assert!((fb["lower"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((fb["upper"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let bounds = framecert(&["bounds", s(&dir.path().join("b/f.json"))]);
    assert_eq!(stdout_json(&bounds), v["bounds"]["f"]);
}

#[test]
fn gallery_errors() {
    let dir = TempDir::new().unwrap();
    let out = framecert(&["gallery", "nope", "--out", s(dir.path())]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown gallery"));
    let out = framecert(&["gallery", "ex21", "--depth", "7", "--out", s(&dir.path().join("x"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("x").exists());
}

#[test]
fn gallery_ex31_and_dichotomy_reingest() {
    let dir = TempDir::new().unwrap();
    let d = dir.path().join("ex31");
    let out = framecert(&["gallery", "ex31", "--depth", "5", "--out", s(&d)]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let again = framecert(&["certify", "thm31", s(&d.join("pair.json")), s(&d.join("y.json"))]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(stdout_json(&again), v["certificates"]["thm31"]);

    let d = dir.path().join("dich");
    let out = framecert(&["gallery", "dichotomy", "--depth", "3", "--out", s(&d)]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["codim"], json!(6));
    assert_eq!(v["ratios"].as_array().unwrap().len(), 3);
}

#[test]
fn gap_command() {
    let dir = TempDir::new().unwrap();
    let theta: f64 = 0.3;
    let a = write(dir.path(), "a.json", json!({"dimension": 2, "vectors": [[1, 0]]}));
    let b = write(dir.path(), "b.json", json!({"dimension": 2, "vectors": [[0, 1]]}));
    let r = write(dir.path(), "r.json", json!({"dimension": 2, "vectors": [[theta.cos(), theta.sin()]]}));
    let v = stdout_json(&framecert(&["gap", s(&a), s(&a)]));
    assert!(v["delta"].as_f64().unwrap() < 1e-15);
    let v = stdout_json(&framecert(&["gap", s(&a), s(&b)]));
    assert!((v["delta"].as_f64().unwrap() - 1.0).abs() < 1e-15);
    let v = stdout_json(&framecert(&["gap", s(&r), s(&a)]));
    assert!((v["delta"].as_f64().unwrap() - 0.29552).abs() < 1e-5);
    assert!((v["delta"].as_f64().unwrap() - theta.sin()).abs() < 1e-9);
    assert_eq!(v["dim_K"], json!(1));
    assert_eq!(v["dim_L"], json!(1));
    let c = write(dir.path(), "c.json", json!({"dimension": 3, "vectors": [[1, 0, 0]]}));
    assert_eq!(framecert(&["gap", s(&a), s(&c)]).status.code(), Some(2));
}

#[test]
fn schauder_certificates_from_files() {
    let dir = TempDir::new().unwrap();
    let base = write(
        dir.path(),
        "base.json",
        json!({"dimension": 2, "vectors": [[1, 0], [0, 1]], "functionals": [[1, 0], [0, 1]], "p": 2}),
    );
    let g = write(dir.path(), "g.json", json!({"dimension": 2, "vectors": [[1.2, 0], [0, 1]]}));
    let out = framecert(&["certify", "thm34", s(&base), s(&g)]);
    assert_eq!(out.status.code(), Some(0));
    assert!((stdout_json(&out)["hypothesis_values"]["mu"].as_f64().unwrap() - 0.2).abs() < 1e-12);

    let plain = write(dir.path(), "plain.json", json!({"dimension": 2, "vectors": [[1, 0], [0, 1]]}));
    let out = framecert(&["certify", "thm31", s(&plain), s(&plain)]);
    assert_eq!(out.status.code(), Some(2));
    let out = framecert(&["certify", "thm33", s(&base), s(&base), "--p", "inf"]);
    assert_eq!(out.status.code(), Some(0));
}
