use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_skewverify");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

/// `checks` with timings removed.
fn checks_without_timing(report: &str) -> Vec<Value> {
    let doc: Value = serde_json::from_str(report).expect("valid JSON");
    doc["checks"]
        .as_array()
        .expect("checks array")
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.as_object_mut().unwrap().remove("elapsed_ms");
            c
        })
        .collect()
}

#[test]
fn list_is_stable_and_contains_required_names() {
    let a = run(&["list"]);
    let b = run(&["list"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let names: Vec<String> = stdout(&a)
        .lines()
        .map(|l| l.split_whitespace().next().unwrap().to_string())
        .collect();
    assert!(names.contains(&"rel_u_cubed".to_string()));
    assert!(names.contains(&"t_central".to_string()));
    assert_eq!(names[0], "rel_u_cubed");
}

#[test]
fn list_json_has_anchors() {
    let o = run(&["list", "--format", "json"]);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for entry in doc.as_array().unwrap() {
        assert!(!entry["anchor"].as_str().unwrap().is_empty());
    }
}

#[test]
fn single_check_passes() {
    let o = run(&["check", "norm_pi_is_7"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS  norm_pi_is_7"));
}

#[test]
fn mu_9_check_passes() {
    let o = run(&["check", "mu_9_not_in_F7", "--seed", "17", "--trials", "3"]);
    assert!(o.status.success());
}

#[test]
fn unknown_check_is_an_error() {
    let o = run(&["check", "nonexistent"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown check"));
}

#[test]
fn json_report_has_one_record_per_check() {
    let listed = stdout(&run(&["list"])).lines().count();
    let o = run(&["all", "--format", "json", "--trials", "2", "--precision", "4"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = doc["checks"].as_array().unwrap();
    assert_eq!(checks.len(), listed);
    for c in checks {
        for field in ["name", "status", "detail", "elapsed_ms", "anchor"] {
            assert!(c.get(field).is_some(), "missing {field}");
        }
        assert_eq!(c["status"], "pass");
    }
}

#[test]
fn reports_are_reproducible() {
    let args = ["all", "--format", "json", "--trials", "3", "--precision", "4", "--seed", "9"];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(checks_without_timing(&a), checks_without_timing(&b));
}

#[test]
fn lambda_override_fails_u_cubed_and_norm() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "l.json", r#"{"lambda": [[1,0,0],[0,0,0],[0,0,0]]}"#);
    for name in ["rel_u_cubed", "rel_norm_lambda"] {
        let o = run(&["check", name, "--constants", &path]);
        assert_eq!(o.status.code(), Some(1), "{name}");
        assert!(stdout(&o).starts_with("FAIL"), "{}", stdout(&o));
    }
    let o = run(&["check", "rel_f_sigma", "--constants", &path]);
    assert!(o.status.success());
}

#[test]
fn unit_d_fails_t_central() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "d.json",
        r#"{"d": [[[1,0,0],[0,0,0],[0,0,0]],[[0,0,0],[0,0,0],[0,0,0]],[[0,0,0],[0,0,0],[0,0,0]]]}"#,
    );
    let o = run(&["check", "t_central", "--trials", "5", "--constants", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("t_commutes_theta"));
}

#[test]
fn singular_d_is_reported_as_error() {
    let dir = tempfile::tempdir().unwrap();
    let zero = "[[0,0,0],[0,0,0],[0,0,0]]";
    let body = format!(r#"{{"d": [{zero},{zero},{zero}]}}"#);
    let path = write(dir.path(), "z.json", &body);
    let o = run(&["check", "rel_inner_theta", "--constants", &path, "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["checks"][0]["status"], "error");
}

#[test]
fn bad_override_files() {
    let dir = tempfile::tempdir().unwrap();
    let shape = write(
        dir.path(),
        "shape.json",
        r#"{"theta_image": {"denominator": 1, "numerators": [[[1,0,0],[0,0,0],[0,0,0]],[[0,0,0],[0,0,0],[0,0,0]]]}}"#,
    );
    let o = run(&["all", "--constants", &shape]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("shape error"), "{}", stderr(&o));

    let zero_den = write(dir.path(), "den.json", r#"{"lambda": [["1/0",0,0],[0,0,0],[0,0,0]]}"#);
    let o = run(&["all", "--constants", &zero_den]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("non-rational"), "{}", stderr(&o));

    let broken = write(dir.path(), "broken.json", "{ lambda: ");
    let o = run(&["all", "--constants", &broken]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("parse error"), "{}", stderr(&o));

    let o = run(&["all", "--constants", "/nonexistent/override.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn zero_trials_rejected() {
    let o = run(&["all", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(2));
}
