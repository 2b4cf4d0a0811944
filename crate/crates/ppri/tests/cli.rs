//! End-to-end checks of the documented command-line surface: the pinned
//! renderings, the JSON mode, and the seed environment variable.

use std::process::Command;

fn ppri(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ppri"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &std::process::Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim_end().to_string()
}

fn stderr(out: &std::process::Output) -> String {
    String::from_utf8_lossy(&out.stderr).trim_end().to_string()
}

#[test]
fn padic_expand_pinned() {
    let out = ppri(&["padic", "expand", "1/4", "--p", "3", "--digits", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "v=0 digits=[1,2,0,2]");
}

#[test]
fn padic_expand_json_shape() {
    let out = ppri(&["--json", "padic", "expand", "1/4", "--p", "3", "--digits", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["prime"], 3);
    assert_eq!(v["valuation"], 0);
    assert_eq!(v["digits"], serde_json::json!([1, 2, 0, 2]));
    assert_eq!(v["precision"], 4);
}

#[test]
fn norm_dual_pinned() {
    let out = ppri(&["norm", "dual", "--vec", "1,-2", "--p", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "2 witness=(0,-1)");
}

#[test]
fn series_exp_padic_domain_error() {
    let out = ppri(&["series", "exp-padic", "1", "--p", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr(&out), "DomainError: |x|_3 = 1 \u{2265} 3^{-1/2}");
}

#[test]
fn series_geometric_padic() {
    let out = ppri(&["series", "geometric", "5", "--p", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "-1/4");
}

#[test]
fn verify_unknown_suite_is_usage_error() {
    let out = ppri(&["verify", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr(&out), "UnknownSuite: bogus");
}

#[test]
fn verify_single_suite_summary() {
    let out = ppri(&["verify", "ultrametric", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "10000/10000 pass");
}

#[test]
fn verify_seed_env_var() {
    let with_flag = ppri(&["--json", "verify", "ultrametric", "--seed", "41"]);
    let with_env = Command::new(env!("CARGO_BIN_EXE_ppri"))
        .args(["--json", "verify", "ultrametric"])
        .env("PPRI_SEED", "41")
        .output()
        .unwrap();
    assert_eq!(with_flag.status.code(), Some(0));
    assert_eq!(with_env.status.code(), Some(0));
    assert_eq!(with_flag.stdout, with_env.stdout);
}

#[test]
fn payload_file_input() {
    let dir = std::env::temp_dir().join(format!("ppri-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("series.json");
    std::fs::write(
        &path,
        r#"{"kind": "finite", "scalar": "rational", "terms": ["1", "1/2", "1/4"]}"#,
    )
    .unwrap();
    let arg = format!("@{}", path.display());
    let out = ppri(&["series", "cauchy", "--a", &arg, "--b", &arg, "--upto", "4"]);
    assert_eq!(out.status.code(), Some(0));
    // (1 + x/2 + x²/4)² = 1 + x + 3x²/4 + x³/4 + x⁴/16.
    assert_eq!(stdout(&out), "(1,1,3/4,1/4,1/16)");
    std::fs::remove_file(&path).ok();
}

#[test]
fn mixed_scalar_payloads_are_rejected() {
    let out = ppri(&[
        "series",
        "cauchy",
        "--a",
        r#"{"kind": "finite", "scalar": "rational", "terms": ["1"]}"#,
        "--b",
        r#"{"kind": "finite", "scalar": "complex", "terms": [[0.0, 1.0]]}"#,
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("KindMismatch"), "{}", stderr(&out));
}

#[test]
fn float_literals_are_rejected_where_exactness_matters() {
    let out = ppri(&["padic", "vp", "0.5", "--p", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("ParseError"), "{}", stderr(&out));
}
