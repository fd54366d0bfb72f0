use std::path::Path;
use std::process::{Command, Output};

use quconv::encoder::{random_encoder, serialize};
use quconv::harness::RunReport;
use quconv::CodeParams;

fn quconv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quconv")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn report(path: &Path) -> RunReport {
    RunReport::from_toml(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn analyze_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let enc = dir.path().join("e.toml");
    std::fs::write(&enc, serialize(&random_encoder(CodeParams::new(3, 1, 2, 1).unwrap(), 9, 60))).unwrap();
    let out = dir.path().join("r.toml");
    let o = quconv(&["analyze", "--encoder", enc.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&out);
    assert_eq!(r.command, "analyze");
    let c = r.analyze.unwrap().classification;
    assert!(c.finite_memory.closure_verified && c.zero_cycle.closure_verified);
}

#[test]
fn analyze_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("none.toml");
    assert_eq!(code(&quconv(&["analyze", "--encoder", missing.to_str().unwrap()])), 3);

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "p = 2\nm = 1\nn = 1\nk = 1\nmatrix = [[1,1,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]\n").unwrap();
    let o = quconv(&["analyze", "--encoder", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("symplectic"));

    let garbage = dir.path().join("garbage.toml");
    std::fs::write(&garbage, "not toml at all [").unwrap();
    assert_eq!(code(&quconv(&["analyze", "--encoder", garbage.to_str().unwrap()])), 2);

    let good = dir.path().join("good.toml");
    std::fs::write(&good, serialize(&random_encoder(CodeParams::new(2, 1, 1, 1).unwrap(), 1, 20))).unwrap();
    let unwritable = dir.path().join("no-such-dir").join("r.toml");
    let o = quconv(&["analyze", "--encoder", good.to_str().unwrap(), "--out", unwritable.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&quconv(&["verify", "--suite", "bogus"])), 2);
    let o = quconv(&["verify", "--suite", "commutation", "--p", "2,3", "--trials", "20"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.toml");
    let o = quconv(&["verify", "--suite", "semicomm", "--p", "2", "--trials", "10", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v = report(&out).verify.unwrap();
    assert!(v.passed && v.violations.is_empty());
}

#[test]
fn search_exit_codes() {
    let o = quconv(&["search", "--p", "2", "--m", "1", "--n", "1", "--k", "1", "--exhaustive"]);
    assert_eq!(code(&o), 1);
    let summary = RunReport::from_toml(&String::from_utf8_lossy(&o.stdout)).unwrap().search.unwrap();
    assert_eq!(summary.examined, 720);

    let too_big = quconv(&["search", "--p", "3", "--m", "1", "--n", "2", "--k", "1", "--exhaustive"]);
    assert_eq!(code(&too_big), 2);
    assert_eq!(code(&quconv(&["search", "--p", "3", "--m", "1", "--n", "1", "--k", "1"])), 2);
    assert_eq!(code(&quconv(&["search", "--p", "4", "--m", "1", "--n", "1", "--k", "1", "--samples", "5"])), 2);
    assert_eq!(code(&quconv(&["search", "--p", "3", "--m", "1", "--n", "1", "--k", "2", "--samples", "5"])), 2);
}

#[test]
fn search_witnesses_reanalyze() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.toml");
    let args = [
        "search", "--p", "3", "--m", "1", "--n", "1", "--k", "1", "--samples", "200", "--seed", "11", "--target",
        "catastrophic", "--max-witnesses", "3", "--out", out.to_str().unwrap(),
    ];
    assert_eq!(code(&quconv(&args)), 0);
    let summary = report(&out).search.unwrap();
    assert_eq!(summary.witnesses.len(), 3);
    for w in &summary.witnesses {
        assert!(w.reverified);
        let enc = dir.path().join(format!("w{}.toml", w.index));
        std::fs::write(&enc, serialize(&w.encoder.clone().into_encoder("").unwrap())).unwrap();
        let r = dir.path().join(format!("w{}-report.toml", w.index));
        assert_eq!(code(&quconv(&["analyze", "--encoder", enc.to_str().unwrap(), "--out", r.to_str().unwrap()])), 0);
        assert_eq!(report(&r).analyze.unwrap().classification, w.classification);
    }
}

#[test]
fn search_is_deterministic_across_workers() {
    let run = |workers: &str| {
        let o = quconv(&[
            "search", "--p", "3", "--m", "1", "--n", "2", "--k", "1", "--samples", "3000", "--seed", "4", "--target",
            "catastrophic", "--max-witnesses", "5", "--workers", workers,
        ]);
        assert_eq!(code(&o), 0);
        RunReport::from_toml(&String::from_utf8_lossy(&o.stdout)).unwrap().search.unwrap()
    };
    assert_eq!(run("1"), run("2"));
}
