use std::path::Path;
use std::process::{Command, Output};

use sha2::{Digest, Sha256};
use tempfile::TempDir;

fn hodgewalk(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hodgewalk")).current_dir(dir).args(args).output().unwrap()
}

fn ok(dir: &Path, args: &[&str]) -> Output {
    let out = hodgewalk(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn files(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> =
        std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().file_name().to_string_lossy().into_owned()).collect();
    v.sort();
    v
}

#[test]
fn edge_rwse_has_one_row_per_edge_and_one_column_per_step() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, &["gallery", "rook4x4", "--format", "edges", "-o", "rook.txt"]);
    ok(d, &["encode", "-i", "rook.txt", "--method", "edge_rwse", "--variant", "undirected", "-T", "16", "-o", "f.csv"]);
    let csv = std::fs::read_to_string(d.join("f.csv")).unwrap();
    let rows: Vec<Vec<&str>> = csv.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 1 + 48);
    assert!(rows.iter().all(|r| r.len() == 1 + 16));
    for r in &rows[1..] {
        let p1: f64 = r[1].parse().unwrap();
        assert_eq!(p1, 0.0);
    }
    assert!(d.join("f.csv.meta.json").exists());
}

#[test]
fn manifest_records_input_digest_and_outputs() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let edges = "0 1\n1 2\n2 0\n2 3\n";
    std::fs::write(d.join("g.txt"), edges).unwrap();
    ok(d, &["walk", "-i", "g.txt", "--kind", "node", "-o", "p.csv"]);
    let m = json(&d.join("p.csv.manifest.json"));
    assert_eq!(m["command"], "walk");
    assert_eq!(
        m["inputs"][0]["sha256"],
        Sha256::digest(edges.as_bytes()).iter().map(|b| format!("{b:02x}")).collect::<String>()
    );
    assert_eq!(m["outputs"][0], "p.csv");
    assert_eq!(m["parameters"]["walk"]["kind"], "node");
    assert!(!m.to_string().contains("time"));
}

#[test]
fn reruns_are_byte_identical() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let run = |name: &str| {
        let out = format!("{name}.csv");
        let args = ["simulate", "--gallery", "fig5b", "--steps", "4", "--trials", "5000", "--seed", "3", "-o", &out];
        ok(d, &args);
        (std::fs::read(d.join(&out)).unwrap(), json(&d.join(format!("{out}.manifest.json"))))
    };
    let (a, ma) = run("a");
    let (b, mb) = run("b");
    assert_eq!(a, b);
    assert_eq!(ma["seed"], 3);
    assert_eq!(ma["parameters"]["trials"], mb["parameters"]["trials"]);
}

#[test]
fn thread_count_does_not_change_results() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_hodgewalk"))
            .env("HODGEWALK_THREADS", threads)
            .args(["simulate", "--gallery", "fig5a", "--trials", "20000", "--seed", "9"])
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run("1"), run("4"));
    let bad = Command::new(env!("CARGO_BIN_EXE_hodgewalk"))
        .env("HODGEWALK_THREADS", "0")
        .args(["betti", "--gallery", "fig5a"])
        .current_dir(d)
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn rook_and_shrikhande_are_separated_only_by_higher_order_methods() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, &["distinguish", "--gallery", "rook4x4", "shrikhande", "--methods", "all", "-o", "r.json"]);
    let r = json(&d.join("r.json"));
    let verdict =
        |m: &str| r["results"].as_array().unwrap().iter().find(|x| x["method"] == m).unwrap()["verdict"].clone();
    for m in ["wl1", "fwl2", "spec_L0", "rwse0"] {
        assert_eq!(verdict(m), "not_separated", "{m}");
    }
    for m in ["spec_L1", "edge_rwse_full", "edge_rwse_up", "hodge1lap_abs"] {
        assert_eq!(verdict(m), "separated", "{m}");
    }
    let text =
        ok(d, &["distinguish", "--gallery", "rook4x4", "shrikhande", "--methods", "wl1,spec_L1", "--format", "text"]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.contains("spec_L1") && text.contains("separated"));
}

#[test]
fn exact_spectrum_of_the_square_with_a_filled_triangle() {
    let tmp = TempDir::new().unwrap();
    let out = ok(tmp.path(), &["spectrum", "--gallery", "fig5a", "-k", "1", "--exact"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let coeffs: Vec<i64> =
        v["coefficients"].as_array().unwrap().iter().map(|c| c.as_str().unwrap().parse().unwrap()).collect();
    let n = coeffs.len() - 1;
    assert_eq!(coeffs[n], 1);
    let trace: i64 = -coeffs[n - 1];
    let l1 = ok(tmp.path(), &["laplacian", "--gallery", "fig5a", "-k", "1"]);
    let csv = String::from_utf8(l1.stdout).unwrap();
    let diag: f64 =
        csv.lines().skip(1).enumerate().map(|(i, l)| l.split(',').nth(i + 1).unwrap().parse::<f64>().unwrap()).sum();
    assert_eq!(trace as f64, diag);
    assert_eq!(csv.lines().count() - 1, n);
}

#[test]
fn invalid_requests_exit_1_and_write_nothing() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let cases: &[&[&str]] = &[
        &["spectrum", "--gallery", "fig5a", "-k", "7", "-o", "x.csv"],
        &["spectrum", "--gallery", "fig5a", "--exact", "--variant", "normalized", "-o", "x.csv"],
        &["encode", "--gallery", "fig5a", "--method", "rwse", "-T", "0", "-o", "x.csv"],
        &["encode", "--gallery", "fig5a", "--method", "rwse", "--mode", "proj", "-o", "x.csv"],
        &["encode", "--gallery", "fig5a", "--method", "lap_pe", "--n-eigen", "9", "-o", "x.csv"],
        &["walk", "--gallery", "fig5a", "--kind", "cellular", "--max-ring", "2", "-o", "x.csv"],
        &["simulate", "--gallery", "fig5a", "--start", "99", "-o", "x.csv"],
        &["laplacian", "--gallery", "fig5a", "--kernel", "heat:abc", "-o", "x.csv"],
        &["gallery", "no_such_object", "-o", "x.csv"],
        &["distinguish", "--gallery", "rook4x4", "shrikhande", "--methods", "nonsense", "-o", "x.csv"],
        &["encode", "-i", "missing.txt", "--method", "rwse", "--gallery", "fig5a"],
        &["build"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = hodgewalk(d, args);
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(files(d).is_empty(), "{args:?} wrote {:?}", files(d));
    }
}

#[test]
fn malformed_edge_lists_are_usage_errors() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    std::fs::write(d.join("bad.txt"), "0 1\n1 x\n").unwrap();
    let out = hodgewalk(d, &["build", "-i", "bad.txt"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.txt"));
}

#[test]
fn computational_and_io_failures_exit_2() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    std::fs::write(d.join("split.txt"), "0 1\n2 3\n").unwrap();
    let out = hodgewalk(d, &["encode", "-i", "split.txt", "--method", "resistance", "-o", "r.csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!d.join("r.csv").exists());
    assert_eq!(hodgewalk(d, &["build", "-i", "absent.txt"]).status.code(), Some(2));
}

#[test]
fn help_and_version_exit_0() {
    let tmp = TempDir::new().unwrap();
    assert_eq!(hodgewalk(tmp.path(), &["--help"]).status.code(), Some(0));
    assert_eq!(hodgewalk(tmp.path(), &["--version"]).status.code(), Some(0));
}

#[test]
fn build_output_round_trips_through_complex_input() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, &["build", "--gallery", "fig5a", "-o", "c.json"]);
    let a = ok(d, &["betti", "--complex", "c.json"]).stdout;
    let b = ok(d, &["betti", "--gallery", "fig5a"]).stdout;
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["betti"], serde_json::json!([1, 0, 0]));
}

#[test]
fn preimage_must_match_the_edge_count() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    std::fs::write(d.join("x.csv"), "a,b\n1,0\n0,1\n").unwrap();
    let args = ["encode", "--gallery", "fig5b", "--method", "hodge1lap", "--mode", "proj", "--preimage", "x.csv"];
    assert_eq!(hodgewalk(d, &args).status.code(), Some(1));
    std::fs::write(d.join("x.csv"), "a\n1\n0\n0\n0\n0\n").unwrap();
    let out = ok(d, &args);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 1 + 5);
}

#[test]
fn isospectral_search_reports_the_pair() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let poly = "--search-l0=0,21,-112,209,-178,73,-14,1";
    ok(d, &["distinguish", poly, "--methods", "wl1,spec_L0,spec_L1", "-o", "s.json"]);
    let s = json(&d.join("s.json"));
    assert_eq!(s["graphs"].as_array().unwrap().len(), 2);
    let pair = &s["pairs"][0];
    let verdicts: Vec<_> = pair["report"]["results"].as_array().unwrap().iter().map(|r| r["verdict"].clone()).collect();
    assert_eq!(verdicts, ["separated", "not_separated", "not_separated"]);
}

#[test]
fn cycles_marks_the_square_and_not_the_pendant_edge() {
    let tmp = TempDir::new().unwrap();
    let out = ok(tmp.path(), &["cycles", "--gallery", "fig5b", "--max-ring", "6", "--eigen-one"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let in_cycle: Vec<bool> = v["edges"].as_array().unwrap().iter().map(|e| e["in_cycle"].as_bool().unwrap()).collect();
    assert_eq!(in_cycle.iter().filter(|&&c| c).count(), 4);
    assert_eq!(v["minimum_cycle_basis"].as_array().unwrap().len(), 1);
    assert_eq!(v["relevant_cycles"].as_array().unwrap().len(), 1);
    assert!(v["eigenvalue_one"]["multiplicity"].is_u64());
}
