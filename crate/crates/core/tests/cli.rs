//! End-to-end tests of the `pvarlab` binary.

use std::path::Path;
use std::process::{Command, Output};

fn pvarlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pvarlab"))
        .args(args)
        .env("SOURCE_DATE_EPOCH", "0")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", &path]);
    let o = pvarlab(&all);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    path
}

#[test]
fn tent_variation() {
    let dir = tempfile::tempdir().unwrap();
    let tent = gen(dir.path(), "tent.csv", &["tent", "--n", "4", "--N", "64"]);
    let o = pvarlab(&["pvar", &tent, "--p", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 2f64.sqrt()).abs() < 1e-12);
    let o = pvarlab(&["pvar", "--grid", &tent, "--p", "1", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["results"][0]["value"].as_f64(), Some(4.0));
}

#[test]
fn vitali_methods_agree_on_products() {
    let dir = tempfile::tempdir().unwrap();
    let f = gen(
        dir.path(),
        "f.csv",
        &["sine-product", "--n", "1", "--m", "1", "--N", "8"],
    );
    let value = |method: &str| -> f64 {
        let o = pvarlab(&[
            "vitali",
            &f,
            "--p",
            "2",
            "--method",
            method,
            "--oracle-limit",
            "8",
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        stdout(&o).trim().parse().unwrap()
    };
    let (oracle, ascent) = (value("oracle"), value("ascent"));
    assert_eq!(oracle, ascent);
    assert!((oracle - 8.0).abs() < 1e-12, "{oracle}");
    let big = gen(
        dir.path(),
        "big.csv",
        &["sine-product", "--n", "1", "--m", "1", "--N", "16"],
    );
    let o = pvarlab(&["vitali", &big, "--p", "2", "--method", "oracle"]);
    assert_eq!(o.status.code(), Some(2));
    let o = pvarlab(&["vitali", &f, "--p", "2", "--method", "oracle"]);
    assert_eq!(o.status.code(), Some(2), "default limit is below 8");
}

#[test]
fn integrals_require_p_above_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = gen(dir.path(), "f.csv", &["sine-product", "--N", "16"]);
    let o = pvarlab(&["integrals", &f, "--p", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("p must exceed 1"));
    let o = pvarlab(&["integrals", &f, "--p", "2", "--tail"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for key in ["J", "K", "I"] {
        let (lo, hi) = (
            json[key]["lo"].as_f64().unwrap(),
            json[key]["hi"].as_f64().unwrap(),
        );
        assert!(0.0 < lo && lo <= hi, "{key}: {lo} {hi}");
    }
}

#[test]
fn modulus_and_wp() {
    let dir = tempfile::tempdir().unwrap();
    let f = gen(dir.path(), "stair.csv", &["staircase", "--N", "16"]);
    for kind in ["line", "iso", "mixed"] {
        let o = pvarlab(&["modulus", &f, "--p", "2", "--kind", kind]);
        assert_eq!(o.status.code(), Some(0), "{kind}: {}", stderr(&o));
        assert!(!o.stdout.is_empty());
    }
    let o = pvarlab(&["wp", &f, "--p", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let w: f64 = stdout(&o).trim().parse().unwrap();
    assert_eq!(w, 8.0);
}

#[test]
fn verify_exit_codes() {
    let ok = pvarlab(&["verify", "--suite", "generators,golubov", "--seed", "3"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));
    let report: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(report["meta"]["seed"], 3);
    assert_eq!(report["meta"]["timestamp"], 0);
    let check = &report["checks"][0];
    for key in [
        "id",
        "paper_anchor",
        "inputs",
        "lhs",
        "rhs",
        "margin",
        "pass",
    ] {
        assert!(check.get(key).is_some(), "missing {key}");
    }
    let bad = pvarlab(&["verify", "--suite", "generators", "--inject-failure"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr(&bad).contains("FAIL synthetic.injected-failure"));
    let usage = pvarlab(&["verify", "--suite", "no-such-section"]);
    assert_eq!(usage.status.code(), Some(2));
    let usage = pvarlab(&["verify", "--no-such-flag"]);
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let o = pvarlab(&[
            "verify",
            "--suite",
            "generators,pvar-oracle,mixed-norm",
            "--seed",
            "11",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        std::fs::read(path).unwrap()
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn sweep_csv_layout() {
    let o = pvarlab(&[
        "sweep", "--family", "t1xt1", "--p-grid", "2", "--n-grid", "1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,p,n,key,value"));
    let rows: Vec<_> = lines.collect();
    assert!(rows
        .iter()
        .any(|r| r.starts_with("t1xt1,2.0,1,vitali_lower,")));
    let csv = pvarlab(&["verify", "--suite", "mixed-norm", "--format", "csv"]);
    assert!(stdout(&csv).starts_with("family,p,n,key,value\n"));
}
