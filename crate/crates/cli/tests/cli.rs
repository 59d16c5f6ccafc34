use std::path::PathBuf;
use std::process::{Command, Output};

use xcorr_cli::boundary::run_boundary;
use xcorr_core::correlations::separability_boundary;

fn xcorr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xcorr")).args(args).output().expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("xcorr-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sweep_csv_is_reproducible() {
    let scenario = scratch("case2.json", r#"{"kind": "case2"}"#);
    let args =
        ["sweep", "--scenario", scenario.to_str().unwrap(), "--alpha", "0.55,0.25", "--tau-max", "3", "--steps", "31"];
    let first = xcorr(&args);
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    assert_eq!(first.stdout, xcorr(&args).stdout);
    let text = stdout(&first);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("tau_minus,alpha,concurrence,discord,fidelity"));
    assert_eq!(lines.count(), 62);
}

#[test]
fn sweep_json_and_fields() {
    let scenario = scratch("constant.json", r#"{"kind": "constant", "beta": 2.0}"#);
    let o = xcorr(&[
        "sweep",
        "--scenario",
        scenario.to_str().unwrap(),
        "--alpha",
        "0.55",
        "--steps",
        "5",
        "--outputs",
        "concurrence,fields",
        "--format",
        "json",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 5);
    let keys: Vec<_> = rows[0].as_object().unwrap().keys().cloned().collect();
    for k in ["tau_minus", "alpha", "concurrence", "omega_A", "omega_B"] {
        assert!(keys.iter().any(|x| x == k), "{k} missing from {keys:?}");
    }
    assert!(rows[0].get("discord").is_none());
}

#[test]
fn sweep_writes_to_out_file() {
    let scenario = scratch("case1.json", r#"{"kind": "case1"}"#);
    let out = scenario.with_file_name("out.csv");
    let o = xcorr(&[
        "sweep",
        "--scenario",
        scenario.to_str().unwrap(),
        "--alpha",
        "0.9",
        "--steps",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(out).unwrap().lines().count(), 4);
}

#[test]
fn bad_config_exits_with_two() {
    let scenario = scratch("case1b.json", r#"{"kind": "case1"}"#);
    let path = scenario.to_str().unwrap();
    let typo = scratch("typo.json", r#"{"kind": "case1", "gama11": 1.0}"#);
    for args in [
        vec!["sweep", "--scenario", path, "--alpha", "1.5"],
        vec!["sweep", "--scenario", path, "--alpha", "0.5", "--steps", "1"],
        vec!["sweep", "--scenario", path, "--alpha", "0.5", "--format", "xml"],
        vec!["sweep", "--scenario", path, "--alpha", "0.5", "--outputs", "entropy"],
        vec!["sweep", "--scenario", "/nonexistent/scenario.json", "--alpha", "0.5"],
        vec!["sweep", "--scenario", typo.to_str().unwrap(), "--alpha", "0.5"],
        vec!["verify", "--cases", "0"],
        vec!["boundary", "--steps", "1"],
    ] {
        let o = xcorr(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: invalid"), "{args:?}");
    }
}

#[test]
fn boundary_properties() {
    let o = xcorr(&["boundary", "--steps", "99"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 100);
    for row in run_boundary(99).unwrap() {
        assert!(row.alpha >= 1.0 / 3.0 - 1e-15);
        let mirror = (1.0 - row.mu_abs * row.mu_abs).sqrt();
        assert!((separability_boundary(mirror) - row.alpha).abs() <= 1e-12);
    }
    assert!((separability_boundary(0.5 * 2f64.sqrt()) - 1.0 / 3.0).abs() <= 1e-15);
}

#[test]
fn verify_seed_42_passes_and_repeats() {
    let first = xcorr(&["verify", "--seed", "42", "--cases", "100"]);
    assert_eq!(first.status.code(), Some(0), "{}", stdout(&first));
    assert!(stdout(&first).contains("all checks passed"));
    assert_eq!(first.stdout, xcorr(&["verify", "--seed", "42", "--cases", "100"]).stdout);
}

#[test]
fn state_report_from_file() {
    let path = scratch(
        "state.json",
        r#"{"rho11": 0.25, "rho22": 0.25, "rho33": 0.25, "rho44": 0.25,
            "rho14_re": 0.0, "rho14_im": 0.0, "rho23_re": 0.0, "rho23_im": 0.0}"#,
    );
    let o = xcorr(&["state", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["concurrence"], 0.0);
    assert!(v["discord"]["discord"].as_f64().unwrap().abs() < 1e-12);
}
