//! End-to-end tests of the `dio` binary and its file formats.

use std::process::{Command, Output};

fn dio(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dio"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn pair_prints_j() {
    let out = dio(&["pair", "1", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "10");
}

#[test]
fn decode_index_classifies() {
    let out = dio(&["decode-index", "21"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "reserved: n_k = n_i^n_j with i = 2, j = 1");
    let out = dio(&["decode-index", "0"]);
    assert_eq!(stdout(&out).trim(), "reference cell: n_0 = 2");
    let out = dio(&["decode-index", "7"]);
    assert_eq!(stdout(&out).trim(), "free cell");
}

#[test]
fn compile_writes_program_and_verify_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("prog.json");
    let out = dio(&[
        "compile",
        "--equation",
        "y1 + y3 = 2*y1*y3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("B = "));
    assert!(text.contains("A = "));
    let written: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["C"], "9+2^(531450)*3^(36)");

    let out = dio(&["verify", "--equation", "y1 + y3 - 2*y1*y3", "--max-val", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0 counterexamples"));
}

#[test]
fn membership_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("composites.json");
    let out = dio(&[
        "compile",
        "--ce-relation",
        "y1 - (y2 + 2)*(y3 + 2)",
        "--w",
        "1",
        "--witnesses",
        "2,3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));

    // (2,0,...,0) codes 6 = 2*3.
    let out = dio(&[
        "membership",
        "--program",
        path.to_str().unwrap(),
        "--tuple",
        "2,0,0,0,0,0,0,0,0",
        "--witness-bound",
        "10",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("code: 6"), "{text}");
    assert!(text.contains("accept: witness (0, 1)"), "{text}");

    // (1,0,...,0) codes the prime 2.
    let out = dio(&[
        "membership",
        "--program",
        path.to_str().unwrap(),
        "--tuple",
        "1,0,0,0,0,0,0,0,0",
        "--witness-bound",
        "30",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("no witness found"));
}

#[test]
fn indicator_regression() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("fam.json");
    std::fs::write(
        &fam,
        r#"{"0": [{"center": ["0","0","0","0","0"], "radius": "1"}]}"#,
    )
    .unwrap();
    let out = dio(&[
        "indicator",
        "--family",
        fam.to_str().unwrap(),
        "--m",
        "0",
        "--point",
        "0,0,0,0,0",
        "--budget",
        "100000",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).starts_with("upper bound: 0"), "{}", stdout(&out));

    let out = dio(&[
        "indicator",
        "--family",
        fam.to_str().unwrap(),
        "--m",
        "0",
        "--point",
        "3,0,0,0,0",
        "--budget",
        "100",
    ]);
    assert!(stdout(&out).contains("inf = 1"));
}

#[test]
fn eval_f_modes() {
    let dir = tempfile::tempdir().unwrap();
    let prog = dir.path().join("prog.json");
    let out = dio(&["compile", "--equation", "0 = 0", "--out", prog.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));

    // Semantic: n_1 = m = 7, n_2 = 1 leaves exactly the n_2 term.
    let asg = dir.path().join("asg.json");
    std::fs::write(&asg, r#"{"free": {"1": 7, "2": 1}}"#).unwrap();
    let out = dio(&[
        "eval-f",
        "--program",
        prog.to_str().unwrap(),
        "--assignment",
        asg.to_str().unwrap(),
        "--point",
        "0,0,0,0,0",
        "--m",
        "7",
        "--mode",
        "semantic",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "f = 1");

    // Dense with n_0 = 3: the reference penalty alone contributes 1.
    let dense = dir.path().join("dense.json");
    std::fs::write(&dense, "[3,0,0,0,0,0,0,0,0,0,27]").unwrap();
    let out = dio(&[
        "eval-f",
        "--program",
        prog.to_str().unwrap(),
        "--assignment",
        dense.to_str().unwrap(),
        "--point",
        "1/2,0,0,0,0",
        "--m",
        "0",
        "--mode",
        "dense",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("not well-formed"), "{text}");
    // (3-2)^2 = 1; the power-law term vanishes because 27 = 3^3.
    assert!(text.contains("f = 1"), "{text}");
}

#[test]
fn render_matches_golden() {
    for (target, style) in [
        ("star", "plain"),
        ("star", "latex"),
        ("dagger", "plain"),
        ("dagger", "latex"),
        ("f", "plain"),
        ("f", "latex"),
        ("main", "plain"),
        ("main", "latex"),
    ] {
        let out = dio(&["render", "--target", target, "--style", style]);
        assert!(out.status.success());
        let golden = std::fs::read_to_string(format!(
            "{}/tests/golden/{target}_{style}.txt",
            env!("CARGO_MANIFEST_DIR")
        ))
        .unwrap();
        assert_eq!(stdout(&out), golden, "{target}_{style}");
    }
}

#[test]
fn render_with_program_constants() {
    let dir = tempfile::tempdir().unwrap();
    let prog = dir.path().join("prog.json");
    dio(&["compile", "--equation", "0 = 0", "--out", prog.to_str().unwrap()]);
    let out = dio(&[
        "render",
        "--target",
        "f",
        "--style",
        "plain",
        "--program",
        prog.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("f_{10,0,0}"));
}

#[test]
fn exit_codes() {
    // Domain error: unparsable equation.
    let out = dio(&["compile", "--equation", "y10 + 1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("reserved index"), "{}", stderr(&out));

    // Usage error: unknown flag.
    let out = dio(&["compile", "--nonsense"]);
    assert_eq!(out.status.code(), Some(2));

    // Verification failure surfaces as a nonzero exit.
    let out = dio(&["verify", "--equation", "y1", "--max-val", "2"]);
    assert!(out.status.success(), "y1 = 0 has a solution but no mismatch");
}
