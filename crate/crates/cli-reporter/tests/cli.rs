//! End-to-end exercise of the `rlab` binary: exit codes, report files,
//! certificates, and determinism.

use intertwiners::{Exponent, LinExpr, OperatorFactor, OperatorWord, Symbol};
use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn rlab(dir: &PathBuf, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rlab"))
        .arg("--output-dir")
        .arg(dir)
        .args(args)
        .env_remove("RLAB_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rlab-test-{}-{tag}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn read_json(path: &PathBuf) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn beta_check_passes_and_echoes_config() {
    let dir = temp_dir("beta");
    let out = rlab(&dir, &["verify-beta", "--alpha", "0.25+0.1i", "--beta", "0.5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = read_json(&dir.join("verify-beta.json"));
    assert_eq!(report["command"], "verify-beta");
    assert_eq!(report["config"]["alpha"], serde_json::json!([0.25, 0.1]));
    assert_eq!(report["report"]["passed"], true);
}

#[test]
fn failing_check_exits_one() {
    let dir = temp_dir("fail");
    let out = rlab(&dir, &["verify-eigen", "--tolerance", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
    let report = read_json(&dir.join("verify-eigen.json"));
    assert_eq!(report["report"]["passed"], false);
}

#[test]
fn config_errors_exit_two_with_json_on_stderr() {
    let dir = temp_dir("config");
    let out = rlab(&dir, &["verify-beta", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    assert_eq!(err["error"], "config");

    let out = rlab(&dir, &["verify-eigen", "--p", "garbage"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    assert!(err["message"].as_str().unwrap().contains("complex"));

    // Domain errors are config errors too.
    let out = rlab(&dir, &["verify-star-triangle-weak", "--alpha", "-0.5", "--gamma", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn star_triangle_reports_are_deterministic() {
    let dir_a = temp_dir("det-a");
    let dir_b = temp_dir("det-b");
    let args = ["verify-star-triangle", "--bands", "8,12", "--trials", "1", "--seed", "9"];
    assert_eq!(rlab(&dir_a, &args).status.code(), Some(0));
    assert_eq!(rlab(&dir_b, &args).status.code(), Some(0));
    let mut a = read_json(&dir_a.join("verify-star-triangle.json"));
    let mut b = read_json(&dir_b.join("verify-star-triangle.json"));
    // Identical config + seed reproduces everything but wall time.
    a["report"]["wall_time_ms"] = Value::Null;
    b["report"]["wall_time_ms"] = Value::Null;
    assert_eq!(a, b);
}

#[test]
fn derive_verify_and_tamper_roundtrip() {
    let dir = temp_dir("cert");
    let out = rlab(&dir, &["derive-yb"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let cert_path = dir.join("yang-baxter-certificate.json");
    let out = rlab(&dir, &["verify-certificate", "--input", cert_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    // Tamper with one move and expect rejection.
    let mut cert = read_json(&cert_path);
    cert["steps"][3]["move"]["position"] = serde_json::json!(0);
    let tampered = dir.join("tampered.json");
    std::fs::write(&tampered, serde_json::to_string(&cert).unwrap()).unwrap();
    let out = rlab(&dir, &["verify-certificate", "--input", tampered.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn search_derivation_finds_the_star_triangle_move() {
    let dir = temp_dir("search");
    let alpha = LinExpr::symbol(Symbol::P);
    let beta = LinExpr::symbol(Symbol::Q);
    let star = OperatorWord::new(
        2,
        vec![
            OperatorFactor::j(1, Exponent::Symbolic(-alpha - beta)),
            OperatorFactor::a(1, 2, Exponent::Symbolic(beta)),
            OperatorFactor::j(1, Exponent::Symbolic(alpha)),
        ],
    )
    .unwrap();
    let triangle = diagram_calculus::star_to_triangle(&star, 0).unwrap();
    let from = dir.join("from.json");
    let to = dir.join("to.json");
    std::fs::write(&from, star.to_json()).unwrap();
    std::fs::write(&to, triangle.to_json()).unwrap();
    let out = rlab(
        &dir,
        &[
            "search-derivation",
            "--from",
            from.to_str().unwrap(),
            "--to",
            to.to_str().unwrap(),
            "--depth-limit",
            "2",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let cert_path = dir.join("search-certificate.json");
    let out = rlab(&dir, &["verify-certificate", "--input", cert_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    // An unreachable target is reported as a failed search.
    let other = OperatorWord::new(
        2,
        vec![OperatorFactor::j(2, Exponent::Symbolic(alpha))],
    )
    .unwrap();
    std::fs::write(&to, other.to_json()).unwrap();
    let out = rlab(
        &dir,
        &[
            "search-derivation",
            "--from",
            from.to_str().unwrap(),
            "--to",
            to.to_str().unwrap(),
            "--depth-limit",
            "1",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_lists_every_subcommand_with_defaults() {
    let out = Command::new(env!("CARGO_BIN_EXE_rlab")).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for sub in [
        "verify-beta",
        "verify-eigen",
        "verify-unitary",
        "verify-intertwine",
        "verify-star-triangle",
        "verify-star-triangle-weak",
        "verify-yang-baxter",
        "derive-yb",
        "search-derivation",
        "convergence",
        "verify-certificate",
    ] {
        assert!(text.contains(sub), "--help must list {sub}");
    }
    let out = Command::new(env!("CARGO_BIN_EXE_rlab"))
        .args(["verify-yang-baxter", "--help"])
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("default: 12 16 24 32"));
}
