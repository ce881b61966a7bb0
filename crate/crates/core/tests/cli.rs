use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn twoside(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twoside"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(text.lines().last().expect("summary line")).expect("summary is JSON")
}

fn exchange(dir: &Path, name: &str, extra: &[&str]) -> String {
    let path = dir.join(name).display().to_string();
    let mut args = vec!["exchange", "--seed", "7", "--out", &path, "--insecure-dump"];
    args.extend_from_slice(extra);
    let out = twoside(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn exchange_writes_agreeing_transcripts() {
    let dir = tempfile::tempdir().unwrap();
    let d = exchange(dir.path(), "d.json", &["--scheme", "digital", "--n", "3"]);
    let t: Value = serde_json::from_str(&std::fs::read_to_string(d).unwrap()).unwrap();
    assert_eq!(t["keys_agree"], Value::Bool(true));
    assert_eq!(t["scheme"], "digital");
    assert_eq!(t["params"]["m"]["n"], 3);

    let tw = exchange(dir.path(), "t.json", &["--scheme", "twisted", "--p", "2", "--fext", "2", "--m", "3"]);
    let t: Value = serde_json::from_str(&std::fs::read_to_string(tw).unwrap()).unwrap();
    assert_eq!(t["keys_agree"], Value::Bool(true));
    for key in ["p", "n", "m", "modulus", "t", "h"] {
        assert!(t["params"].get(key).is_some(), "missing params.{key}");
    }
}

#[test]
fn exchange_is_reproducible_and_echoes_seed() {
    let a = twoside(&["exchange", "--scheme", "twisted", "--seed", "11"]);
    let b = twoside(&["exchange", "--scheme", "twisted", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    let unseeded = twoside(&["exchange"]);
    let summary: Value = serde_json::from_str(String::from_utf8_lossy(&unseeded.stderr).trim()).unwrap();
    assert!(summary["seed"].is_u64());
}

#[test]
fn invalid_prime_is_a_usage_error() {
    let out = twoside(&["exchange", "--scheme", "twisted", "--p", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("p must be prime"));
    let out = twoside(&["exchange", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = twoside(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn attack_recovers_both_schemes() {
    let dir = tempfile::tempdir().unwrap();
    for (name, extra) in [
        ("d.json", vec!["--scheme", "digital", "--n", "4"]),
        ("t.json", vec!["--scheme", "twisted", "--p", "5", "--fext", "1", "--m", "6"]),
    ] {
        let path = exchange(dir.path(), name, &extra);
        let out = twoside(&["attack", &path]);
        assert_eq!(out.status.code(), Some(0));
        let report = stdout_json(&out);
        assert_eq!(report["attack_key_matches"], Value::Bool(true), "{name}");
        assert!(report["unknowns"].as_u64().unwrap() > 0);
        assert!(report["equations"].as_u64().unwrap() > 0);
        assert!(report["attack_ms"].is_number());
    }
}

#[test]
fn attack_runs_without_private_material() {
    let dir = tempfile::tempdir().unwrap();
    let path = exchange(dir.path(), "d.json", &["--scheme", "twisted"]);
    let mut t: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    t.as_object_mut().unwrap().remove("private");
    let stripped = dir.path().join("public.json");
    std::fs::write(&stripped, t.to_string()).unwrap();
    let out = twoside(&["attack", stripped.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["attack_key_matches"], Value::Null);
}

#[test]
fn corrupted_digital_key_is_a_solver_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = exchange(dir.path(), "d.json", &["--scheme", "digital", "--n", "3"]);
    let mut t: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // ∞ exceeds every entry of M in ≤_W, so no combination of the basis products reaches it
    t["alice_pk"]["rows"][1][2] = Value::String("inf".into());
    std::fs::write(&path, t.to_string()).unwrap();
    let out = twoside(&["attack", &path]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no solution"));
}

#[test]
fn corrupted_twisted_key_does_not_pass_as_a_match() {
    let dir = tempfile::tempdir().unwrap();
    let path = exchange(dir.path(), "t.json", &["--scheme", "twisted", "--p", "3", "--fext", "2", "--m", "4"]);
    let mut t: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let coeffs = t["alice_pk"]["coeffs"].as_array_mut().unwrap();
    let first = coeffs[0][2].as_array_mut().unwrap();
    first[0] = Value::from((first[0].as_u64().unwrap() + 1) % 3);
    std::fs::write(&path, t.to_string()).unwrap();
    let out = twoside(&["attack", &path]);
    // the basis products usually span all of R, so a tampered key still solves but yields the wrong key
    assert!(matches!(out.status.code(), Some(3) | Some(4)), "{:?}", out.status);
}

#[test]
fn attack_reports_unreadable_files() {
    let out = twoside(&["attack", "/nonexistent/transcript.json"]);
    assert_eq!(out.status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{not json").unwrap();
    assert_eq!(twoside(&["attack", junk.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn digital_bench_grid() {
    let out = twoside(&["bench", "--scheme", "digital", "--n", "2,4,8", "--trials", "10", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "scheme,params,trial,solve_ms,attack_ms,success");
    assert_eq!(rows.len(), 31);
    assert!(rows[1..].iter().all(|r| r.ends_with(",true")));
}

#[test]
fn twisted_bench_grid_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = twoside(&[
            "bench", "--scheme", "twisted", "--grid", "2:2:3,3:2:4,5:1:6", "--trials", "10", "--seed", "9",
            "--omit-timing", "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let a = std::fs::read(a).unwrap();
    assert_eq!(a, std::fs::read(b).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 31);
    assert!(text.lines().skip(1).all(|r| r.ends_with(",true")));
}

#[test]
fn bench_rejects_bad_grids() {
    assert_eq!(twoside(&["bench", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(twoside(&["bench", "--scheme", "twisted", "--grid", "2:2"]).status.code(), Some(2));
    assert_eq!(twoside(&["bench", "--scheme", "twisted", "--p", "9"]).status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let out = twoside(&["selftest", "--trials", "2", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["failures"], Value::Array(vec![]));
}
