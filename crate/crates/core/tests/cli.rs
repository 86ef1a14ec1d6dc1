use std::path::{Path, PathBuf};
use std::process::Command;

use hyperppr::hypergraph::{measure, VertexSubset};
use hyperppr::io::read_hypergraph;

const F1: &str = "# F1\n4 2\n1 0 1 2\n1 2 3\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperppr"))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> (i32, String, String) {
    let o = bin().args(args).output().unwrap();
    (o.status.code().unwrap(), String::from_utf8(o.stdout).unwrap(), String::from_utf8(o.stderr).unwrap())
}

fn json(s: &str) -> serde_json::Value {
    serde_json::from_str(s.trim()).unwrap()
}

#[test]
fn stats_on_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f1.hg", F1);
    let (code, out, _) = run(&["stats", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "n=4 m=2 avg_deg=1.25 avg_size=2.5\n");
}

#[test]
fn local_on_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f1.hg", F1);
    let (code, out, _) = run(&["local", f.to_str().unwrap(), "--seed-vertex", "0", "--mu", "0.5"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["phi"].as_f64(), Some(0.5));
    assert_eq!(v["method"], "local");
    assert_eq!(v["members_sorted"], serde_json::json!([0, 1]));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f1.hg", F1);
    let bad = write(dir.path(), "bad.hg", "2 1\nx 0 1\n");
    let f = f.to_str().unwrap();
    assert_eq!(run(&["local", "missing.hg", "--seed-vertex", "0"]).0, 2);
    assert_eq!(run(&["stats", bad.to_str().unwrap()]).0, 2);
    assert_eq!(run(&["local", f]).0, 1);
    assert_eq!(run(&["local", f, "--seed-vertex", "9"]).0, 1);
    assert_eq!(run(&["local", f, "--seed-vertex", "0", "--mu", "0.7"]).0, 1);
    assert_eq!(run(&["local", f, "--seed-vertex", "0", "--alpha", "0.1"]).0, 1);
    assert_eq!(run(&["ppr", f, "--seed-vertex", "0", "--dt", "50", "--total-time", "100000", "--theta", "0"]).0, 3);
}

#[test]
fn isolated_vertices_need_the_flag() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "iso.hg", "5 2\n1 0 1 2\n1 2 3\n");
    let f = f.to_str().unwrap();
    assert_eq!(run(&["stats", f]).0, 2);
    let (code, out, _) = run(&["stats", f, "--drop-isolated"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("n=4 m=2"));
}

#[test]
fn ppr_and_sweep_dumps() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write(dir.path(), "p3.hg", "3 2\n1 0 1\n1 1 2\n");
    let p3 = p3.to_str().unwrap();
    let (code, out, _) = run(&["ppr", p3, "--seed-vertex", "0", "--alpha", "0.5", "--exact"]);
    assert_eq!(code, 0);
    let x: Vec<f64> = out.lines().map(|l| l.parse().unwrap()).collect();
    for (a, b) in x.iter().zip([17.0 / 24.0, 0.25, 1.0 / 24.0]) {
        assert!((a - b).abs() <= 1e-12);
    }
    let (code, out, _) = run(&["sweep", p3, "--seed-vertex", "0", "--alpha", "0.5"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "j,vertex,vol,cut,phi");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("1,0,1,1,1"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("planted.hg");
    let (code, out, _) = run(&["gen", "--rng-seed", "2", "--out", target.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, ""));
    let h = read_hypergraph(&target).unwrap();
    assert_eq!((h.n(), h.m()), (32, 81));
}

#[test]
fn global_and_baseline_emit_reproducible_sets() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("planted.hg");
    run(&["gen", "--rng-seed", "1", "--out", target.to_str().unwrap()]);
    let t = target.to_str().unwrap();
    let h = read_hypergraph(&target).unwrap();
    for args in [
        vec!["global", t, "--sample", "8", "--rng-seed", "3"],
        vec!["global", t, "--seed-vertex", "5,20"],
        vec!["baseline", t, "--seed-vertex", "3", "--mode", "clique", "--mu", "0.5"],
        vec!["baseline", t, "--seed-vertex", "3", "--mode", "star"],
    ] {
        let (code, out, err) = run(&args);
        assert_eq!(code, 0, "{args:?}: {err}");
        let v = json(&out);
        let members: Vec<usize> =
            v["members_sorted"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as usize).collect();
        let m = measure(&h, &VertexSubset::new(h.n(), members).unwrap()).unwrap();
        assert_eq!(v["phi"].as_f64(), Some(m.conductance), "{args:?}");
        assert_eq!(run(&args).1, out, "{args:?} is not deterministic");
    }
}

#[test]
fn bench_rows_match_local_runs() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("random.hg");
    run(&[
        "gen",
        "--model",
        "random",
        "--vertices",
        "1000",
        "--edges",
        "1500",
        "--rng-seed",
        "7",
        "--out",
        target.to_str().unwrap(),
    ]);
    let t = target.to_str().unwrap();
    let (code, out, err) = run(&["bench", t, "--sample", "50", "--rng-seed", "11"]);
    assert_eq!(code, 0, "{err}");
    let rows: Vec<Vec<&str>> =
        out.lines().skip(1).filter(|l| !l.starts_with('#')).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 50);
    let again = run(&["bench", t, "--sample", "50", "--rng-seed", "11"]).1;
    let seeds = |s: &str| {
        s.lines()
            .skip(1)
            .filter(|l| !l.starts_with('#'))
            .map(|l| l.split(',').take(5).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
    };
    assert_eq!(seeds(&out), seeds(&again));
    for row in rows.iter().take(3) {
        let (_, local, _) = run(&["local", t, "--seed-vertex", row[0], "--mu", "0.5"]);
        assert_eq!(json(&local)["phi"].as_f64(), Some(row[1].parse::<f64>().unwrap()));
    }
}

#[test]
fn verify_emits_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f1.hg", F1);
    let (code, out, err) =
        run(&["verify", f.to_str().unwrap(), "--seed-vertex", "0", "--alpha", "0.1", "--cluster", "0,1"]);
    assert_eq!(code, 0, "{err}");
    let reports: Vec<serde_json::Value> = out.lines().map(json).collect();
    let by_name = |n: &str| reports.iter().find(|r| r["name"] == n).unwrap_or_else(|| panic!("no {n}"));
    assert_eq!(by_name("criterion-2")["holds"], true);
    assert_eq!(by_name("criterion-2")["rhs"].as_f64(), Some(1.0 / 6.0));
    assert_eq!(by_name("brute-force-conductance")["lhs"].as_f64(), Some(0.5));
    assert_eq!(by_name("ppr-mass")["holds"], true);
    assert!(by_name("leak-local")["applicable"].is_boolean());
}

#[test]
fn convert_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let bip =
        write(dir.path(), "out.example", "% bip unweighted\n% 9 5 4\n1 1\n2 1\n3 1\n3 2\n4 2\n1 2\n7 3\n8 3\n7 4\n");
    let a = run(&["convert", bip.to_str().unwrap()]);
    let b = run(&["convert", bip.to_str().unwrap()]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    assert_eq!(a.2, b.2);
    // left vertices 1..4 share right vertices 1 and 2; {7, 8} is the smaller component
    assert_eq!(a.1, "4 2\n1 0 1 2\n1 0 2 3\n");
    assert_eq!(a.2.trim(), "n=4 m=2 avg_deg=1.5 avg_size=3");
}
