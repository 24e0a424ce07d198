use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use seqcert::definition::load_sequence_spec;
use seqcert::poly::poly_equal;
use seqcert::{catalog, generate_terms};

fn seqcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqcert")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn flf_certificate_run_exits_zero() {
    let out = seqcert(&[
        "analyze", "--sequence", "flf", "--terms", "1000", "--checks", "log-concave", "--certificate", "builtin",
        "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["certificate"]["verdict"], "PROVED");
    assert_eq!(v["certificate"]["empirical"]["verdict"], "HOLDS");
    assert!(v["certificate"]["empirical"].get("first_violation").is_none());
    assert_eq!(v["certificate"]["spot_check"]["failures"], Value::Array(vec![]));
    assert_eq!(v["checks"][0]["verdict"], "HOLDS");
}

#[test]
fn clf_log_balanced_exits_zero() {
    let out = seqcert(&["analyze", "--sequence", "clf", "--terms", "1000", "--checks", "log-balanced"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("HOLDS"));
}

#[test]
fn clf_log_concave_exits_one() {
    let out = seqcert(&[
        "analyze", "--sequence", "clf", "--terms", "100", "--checks", "log-concave", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["checks"][0]["first_violation"], 1);
    assert_eq!(v["checks"][0]["witness"], serde_json::json!(["1", "8", "80"]));
}

#[test]
fn report_shape() {
    let out = seqcert(&["analyze", "--sequence", "flf", "--terms", "50", "--checks", "nth-root,criterion", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["certificate", "checks", "sequence", "terms", "timing"]);
    assert_eq!(v["terms"]["count"], 51);
    assert_eq!(v["terms"]["first"], serde_json::json!(["1", "8", "144", "2432", "40000"]));
    assert_eq!(v["checks"][0]["window"], serde_json::json!([1, 48]));
}

#[test]
fn input_errors_exit_three() {
    for args in [
        &["analyze", "--sequence", "nosuch", "--terms", "10"][..],
        &["analyze", "--sequence", "flf", "--terms", "1"],
        &["analyze", "--sequence", "flf", "--checks", "log-wobbly"],
        &["analyze", "--sequence", "flf", "--format", "yaml"],
        &["export", "nosuch"],
        &["frobnicate"],
    ] {
        let out = seqcert(args);
        assert_eq!(out.status.code(), Some(3), "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn certificate_without_source_is_inconclusive() {
    let out = seqcert(&["analyze", "--sequence", "clf", "--terms", "20", "--certificate", "builtin"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_reports_are_deterministic() {
    let args = [
        "analyze", "--sequence", "flf", "--terms", "300", "--checks", "log-concave,criterion", "--certificate",
        "builtin", "--format", "json", "--seed", "7",
    ];
    let strip = |out: Output| {
        let mut v = json(&out);
        v.as_object_mut().unwrap().remove("timing");
        v.to_string()
    };
    assert_eq!(strip(seqcert(&args)), strip(seqcert(&args)));
}

#[test]
fn export_round_trip() {
    let out = seqcert(&["export", "flf"]);
    assert_eq!(out.status.code(), Some(0));
    let path = scratch("flf.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let def = load_sequence_spec(&path).unwrap();
    let builtin = catalog::flf();
    assert!(poly_equal(&def.recurrence.a, &builtin.a));
    assert!(poly_equal(&def.recurrence.b, &builtin.b));
    assert!(poly_equal(&def.recurrence.c, &builtin.c));
    assert_eq!(def.recurrence.initial, builtin.initial);
    assert_eq!(
        generate_terms(&def.recurrence, 200).unwrap().terms(),
        generate_terms(&builtin, 200).unwrap().terms()
    );
    let cert = def.certificate.unwrap();
    assert_eq!(cert.n0, 3);
    assert_eq!(cert.explicit_checks, [2, 3]);

    let p = path.to_str().unwrap();
    // file definitions default to a window starting at 1, where V_1^2 < V_0 V_2
    let out = seqcert(&["analyze", "--sequence", p, "--terms", "200", "--checks", "log-concave"]);
    assert_eq!(out.status.code(), Some(1));
    let out = seqcert(&[
        "analyze", "--sequence", p, "--terms", "200", "--checks", "log-concave", "--from", "2", "--certificate", "builtin",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = seqcert(&["analyze", "--sequence", "flf", "--terms", "200", "--certificate", p]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn schema_errors_exit_three() {
    let path = scratch("bad.json");
    std::fs::write(&path, r#"{"name": "x", "mode": "integer", "a": ["1"], "b": ["-2"], "c": ["1"], "initial": ["0", "8"]}"#).unwrap();
    let out = seqcert(&["analyze", "--sequence", path.to_str().unwrap(), "--terms", "10"]);
    assert_eq!(out.status.code(), Some(3));
    std::fs::write(&path, "{ not json").unwrap();
    let out = seqcert(&["analyze", "--sequence", path.to_str().unwrap(), "--terms", "10"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}
