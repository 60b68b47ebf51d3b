use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("diagres").chain(args.iter().copied());
    let code = diagres_cli::run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn classify_finite_with_witness() {
    let v = json(&["classify", "--char", "5", "--n", "3", "--N", "10"]);
    assert_eq!(v["kind"], "Finite");
    assert_eq!(v["witness"]["J"], 1);
    assert_eq!(v["witness"]["q"], 5);
}

#[test]
fn classify_infinite_char_zero() {
    let v = json(&["classify", "--char", "0", "--n", "2", "--N", "5"]);
    assert_eq!(v["kind"], "Infinite");
    assert_eq!(v["theta"], 2);
    assert_eq!(v["r"], 1);
    assert!(v["witness"].is_null());
}

#[test]
fn classify_ranges_are_sorted() {
    let v = json(&["classify", "--char", "3", "--n", "2..=3", "--N", "4..7"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 6);
    let keys: Vec<(u64, u64)> = rows.iter().map(|r| (r["n"].as_u64().unwrap(), r["N"].as_u64().unwrap())).collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    assert_eq!(keys, sorted);
}

#[test]
fn verify_nandi() {
    let (code, out, _) = run(&["verify", "--suite", "nandi", "--max", "12"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["name"], "nandi");
    assert!(v[0]["failures"].as_array().unwrap().is_empty());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["classify", "--char", "4", "--n", "2", "--N", "3"][..],
        &["classify", "--n", "2"],
        &["classify", "--char", "3", "--n", "0", "--N", "3"],
        &["verify", "--suite", "nosuch"],
        &["frobenius", "--char", "3", "--n", "6", "--N", "5"],
        &["socle", "--char", "0", "--n", "2", "--N", "3", "--format", "xml"],
        &["bogus"],
    ] {
        let (code, out, err) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty());
        assert!(!err.is_empty());
    }
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("classify"));
}

#[test]
fn json_is_byte_identical() {
    for args in [
        &["resolve", "--char", "0", "--n", "3", "--N", "4"][..],
        &["colon", "--char", "3", "--n", "2", "--N", "3"],
        &["twovar", "--char", "0", "--n", "5", "--N", "7"],
        &["classify", "--char", "7", "--n", "1..=4", "--N", "1..=12"],
    ] {
        let (c1, a, _) = run(args);
        let (c2, b, _) = run(args);
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(a, b);
    }
}

#[test]
fn resolve_infinite_and_finite() {
    let v = json(&["resolve", "--char", "0", "--n", "2", "--N", "3"]);
    assert_eq!(v["verified"], true);
    assert_eq!(v["p_resolution"]["modules"][2].as_array().unwrap().len(), 7);
    assert_eq!(v["r_resolution"]["tail"]["period_shift"], 2);
    assert!(v["gorenstein_resolution"].is_object());
    let v = json(&["resolve", "--char", "5", "--n", "3", "--N", "10"]);
    assert_eq!(v["verified"], true);
    assert_eq!(v["resolution"]["modules"][1], serde_json::json!([-10, -10, -10]));
}

#[test]
fn colon_and_socle_agree_with_closed_forms() {
    let v = json(&["colon", "--char", "3", "--n", "2", "--N", "3"]);
    assert_eq!(v["count"], 7);
    assert_eq!(v["agrees"], true);
    let v = json(&["socle", "--char", "0", "--n", "3", "--N", "7"]);
    assert_eq!(v["socle"], serde_json::json!([9, 10, 10, 10]));
    assert_eq!(v["agrees"], true);
}

#[test]
fn frobenius_and_twovar() {
    let v = json(&["frobenius", "--char", "3", "--n", "4", "--N", "2", "--N2", "6"]);
    assert_eq!(v["report"]["e"], 2);
    assert_eq!(v["order"], 2);
    assert_eq!(v["shift"], 6);
    let v = json(&["twovar", "--char", "0", "--n", "5", "--N", "7", "--N2", "8"]);
    assert_eq!(v["verified"], true);
    assert_eq!(v["socle"], serde_json::json!([7, 8]));
    assert_eq!(v["shift"], 1);
}

#[test]
fn text_format() {
    let (code, out, _) = run(&["classify", "--char", "0", "--n", "2", "--N", "5", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.contains("Infinite theta=2 r=1"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_diagres");
    let ok = Command::new(bin).args(["verify", "--suite", "nandi", "--max", "12"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(["classify", "--char", "x"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
}
