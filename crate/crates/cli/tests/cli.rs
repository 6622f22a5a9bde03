//! End-to-end checks of the binary: exit codes, JSON artifacts, alist
//! export, and reproduction entries.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_unit-codes"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("unit-codes-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn usage_errors_exit_1() {
    let out = run(&["fourier", "--n", "7"]); // missing --field and row choice
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["named", "unknown-unit", "--rows", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn fourier_analyze_reports_css() {
    let out = run(&[
        "fourier", "--n", "7", "--field", "gf(2^3)", "--rows", "0..3", "--analyze",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["n"], 7);
    assert_eq!(v["k"], 4);
    let report = &v["report"];
    assert_eq!(report["d"], 4);
    assert_eq!(report["flags"]["dc"], true);
    assert_eq!(report["css"], serde_json::json!([7, 1, 4]));
}

#[test]
fn budget_refusal_exits_2() {
    let out = run(&[
        "fourier", "--n", "7", "--field", "gf(2^3)", "--rows", "0..3", "--analyze", "--cap", "10",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn repro_pass_and_mismatch_exit_codes() {
    let out = run(&["repro", "golay-block"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[PASS] [n,k,d]: [24,12,8]"));

    // The Hamming convolutional free distance is 4, not the stated 6; the
    // reproduction entry reports the mismatch with exit code 3.
    let out = run(&["repro", "hamming-conv"]);
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("expected 6, got 4"));
}

#[test]
fn named_golay_identity_stack() {
    let out = run(&["named", "golay", "--derive", "I|X", "--analyze"]);
    let v = stdout_json(&out);
    assert_eq!(v["n"], 24);
    assert_eq!(v["report"]["flags"]["self_dual"], true);
    assert_eq!(v["report"]["d"], 8);
}

#[test]
fn derive_from_scheme_file() {
    let scheme_path = tmp_path("scheme.json");
    let identity = serde_json::json!({
        "u": {
            "field": "gf(2)",
            "rows": 4,
            "cols": 4,
            "data": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]],
        }
    });
    std::fs::write(&scheme_path, identity.to_string()).unwrap();
    let out = run(&[
        "derive", "--scheme", scheme_path.to_str().unwrap(), "--rows", "0,2",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["k"], 2);
    assert_eq!(v["report"]["d"], 1);
    assert_eq!(v["report"]["flags"]["lcd"], true);
    std::fs::remove_file(&scheme_path).ok();
}

#[test]
fn conv_binary_x4_self_dual() {
    let out = run(&[
        "conv", "--named", "binary-x4", "--split", "2,2", "--free-distance", "--classify",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["n"], 4);
    assert_eq!(v["k"], 2);
    assert_eq!(v["mu"], 1);
    assert_eq!(v["class"], "self_dual");
    assert_eq!(v["free_distance"]["value"], 4);
    assert_eq!(v["noncatastrophic"], true);
}

#[test]
fn ldpc_alist_export_and_girth() {
    let alist = tmp_path("check.alist");
    let out = run(&[
        "ldpc",
        "--element",
        "g^15 + g^9 + g^5 + h*g^21 + h*g^4 + h^2*g^2 + h^3*g^12 @ C24xC4",
        "--rows",
        "first:48",
        "--girth",
        "4",
        "--alist",
        alist.to_str().unwrap(),
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["n"], 96);
    assert_eq!(v["k"], 48);
    assert_eq!(v["four_cycles"], 0);
    assert!(v["max_col_support"].as_u64().unwrap() <= 8);
    let text = std::fs::read_to_string(&alist).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("96 48"));
    std::fs::remove_file(&alist).ok();
}

#[test]
fn analyze_code_file() {
    let code_path = tmp_path("code.json");
    let code = serde_json::json!({
        "generator": {
            "field": "gf(2)",
            "rows": 1,
            "cols": 2,
            "data": [[1, 1]],
        }
    });
    std::fs::write(&code_path, code.to_string()).unwrap();
    let out = run(&["analyze", "--code", code_path.to_str().unwrap()]);
    let v = stdout_json(&out);
    assert_eq!(v["d"], 2);
    assert_eq!(v["flags"]["self_dual"], true);
    std::fs::remove_file(&code_path).ok();
}

#[test]
fn deterministic_artifacts_for_fixed_seed() {
    let args = [
        "ldpc",
        "--element",
        "g^15 + g^9 + g^5 + h*g^21 + h*g^4 + h^2*g^2 + h^3*g^12 @ C24xC4",
        "--rows",
        "random:48",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
}
