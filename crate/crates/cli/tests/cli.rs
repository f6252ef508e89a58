use std::process::{Command, Output};

use serde_json::Value;

fn flatvol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flatvol")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = flatvol(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn s3_torus_with_trivial_boundary() {
    let v = json(&["volume", "--group", "s3", "--genus", "1", "--holonomy", "e", "--normalization", "counting"]);
    assert_eq!(v["tool"], "flatvol");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["seed"], 0);
    assert_eq!(v["result"]["value"], 18.0);
    assert_eq!(v["result"]["exact"], true);
    assert_eq!(v["normalization"]["convention"], "counting");
    assert_eq!(v["normalization"]["vol_g"], 6.0);
    assert_eq!(v["truncation"], 3);
    assert!(v.get("tolerance").is_some());
}

#[test]
fn finite_anchor_values() {
    let val = |args: &[&str]| json(args)["result"]["value"].as_f64().unwrap();
    assert_eq!(val(&["volume", "--group", "s3", "--holonomy", "transposition"]), 0.0);
    assert_eq!(val(&["volume", "--group", "s3", "--holonomy", "3cycle"]), 9.0);
    assert_eq!(val(&["volume", "--group", "s3", "--genus", "2"]), 486.0);
    assert_eq!(val(&["volume", "--group", "s3", "--holonomy", "e", "--holonomy2", "e"]), 108.0);
    assert_eq!(val(&["volume", "--group", "s3", "--cross-caps", "1"]), 90.0);
    assert_eq!(val(&["volume", "--group", "s3", "--genus", "0", "--cross-caps", "2"]), 18.0);
    assert_eq!(val(&["volume", "--group", "s3", "--holonomy", "3cycle", "--moduli"]), 3.0);
}

#[test]
fn witten_rescales_by_descriptor() {
    let unit = json(&["volume", "--group", "su2", "--genus", "2", "--theta", "1"]);
    let w = json(&["volume", "--group", "su2", "--genus", "2", "--theta", "1", "--normalization", "witten"]);
    let pre = w["normalization"]["witten_prefactor"].as_f64().unwrap();
    assert_eq!(w["normalization"]["two_pi_exponent"], 8);
    assert_eq!(w["normalization"]["convention"], "witten");
    let (u, wv) = (unit["result"]["value"].as_f64().unwrap(), w["result"]["value"].as_f64().unwrap());
    assert!((wv - u * pre).abs() <= 1e-15 * wv.abs());
    assert!((pre - 2.0 / (2.0 * std::f64::consts::PI).powi(8)).abs() < 1e-20);
}

#[test]
fn finite_verify_suite_passes_exactly() {
    let out = flatvol(&["verify", "--suite", "finite", "--groups", "s3,d4,q8,z6", "--max-genus", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = v["result"]["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        assert_eq!(c["status"], "pass", "{c}");
        let name = c["identity_name"].as_str().unwrap();
        if name.contains("count") {
            // Integer counts agree exactly.
            assert_eq!(c["residual"], 0.0, "{c}");
        } else {
            // Complex character arithmetic (Z/6) leaves float round-off.
            assert!(c["residual"].as_f64().unwrap() < 1e-12, "{c}");
        }
    }
    assert_eq!(v["result"]["summary"]["failed"], 0);
}

#[test]
fn hphi_csv_and_series_spot_row() {
    let out = flatvol(&["hphi", "--curvature", "hyperbolic", "--b", "2", "--phi-grid", "0.2:3.0:0.1", "--output", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("phi,k,h,kh,H_su2"));
    assert_eq!(lines.count(), 29);

    let out = flatvol(&["hphi", "--b", "2", "--phi", "pi/3,pi/4", "--output", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    for rec in rdr.records() {
        let rec = rec.unwrap();
        let (k, h, kh, big, series): (f64, f64, f64, f64, f64) = (
            rec[1].parse().unwrap(),
            rec[2].parse().unwrap(),
            rec[3].parse().unwrap(),
            rec[4].parse().unwrap(),
            rec[6].parse().unwrap(),
        );
        assert!((h - series).abs() < 1e-9);
        assert!((kh - k * h).abs() < 1e-15);
        assert!((big - kh.powf(1.5)).abs() < 1e-15);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(flatvol(&["volume", "--group", "s3", "--theta", "1"]).status.code(), Some(2));
    assert_eq!(flatvol(&["volume", "--group", "su2", "--holonomy", "e"]).status.code(), Some(2));
    assert_eq!(flatvol(&["volume", "--group", "s3", "--holonomy", "nope"]).status.code(), Some(2));
    assert_eq!(flatvol(&["volume", "--group", "nope"]).status.code(), Some(2));
    assert_eq!(flatvol(&["volume", "--group", "su2", "--genus", "1"]).status.code(), Some(2));
    assert_eq!(flatvol(&["volume", "--group", "s3", "--bogus"]).status.code(), Some(2));
    assert_eq!(flatvol(&["hphi", "--b", "1", "--side", "1", "--phi", "1"]).status.code(), Some(2));
    assert_eq!(flatvol(&["hphi", "--curvature", "euclidean", "--side", "1", "--phi", "pi"]).status.code(), Some(2));
    assert_eq!(flatvol(&["verify", "--suite", "su2", "--trunc", "5"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("missing").join("out.json");
    let out = flatvol(&["volume", "--group", "s3", "--out", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
    assert_eq!(flatvol(&["--help"]).status.code(), Some(0));
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let args = ["table", "--group", "d4", "--output", "csv"];
    let stdout = flatvol(&args).stdout;
    let mut with_out: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    with_out.extend(["--out", &p]);
    let out = flatvol(&with_out);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
}

#[test]
fn byte_identical_across_runs_and_jobs() {
    let cases: [&[&str]; 5] = [
        &["verify", "--suite", "su2", "--seed", "42", "--samples", "200000"],
        &["verify", "--suite", "geometry"],
        &["hphi", "--b", "1", "--phi-grid", "0.3:3.1:0.2", "--output", "csv"],
        &["table", "--group", "su2", "--abel", "--max-genus", "3"],
        &["volume", "--group", "su2", "--genus", "1", "--theta", "2", "--abel"],
    ];
    for args in cases {
        let run = |jobs: &str| {
            let mut a = args.to_vec();
            a.extend(["--jobs", jobs]);
            let out = flatvol(&a);
            assert!(out.status.success(), "{a:?}");
            out.stdout
        };
        let first = run("1");
        assert_eq!(first, run("1"), "{args:?}");
        assert_eq!(first, run("8"), "{args:?}");
    }
}
