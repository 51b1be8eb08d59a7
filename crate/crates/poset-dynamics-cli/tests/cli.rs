//! End-to-end tests of the binary: verbs, exit codes, report determinism,
//! and the file formats.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_poset-dynamics"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn enumerate_asm3_counts_seven() {
    let out = run(&["enumerate", "--poset", "asm:3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("7 order ideals"));
}

#[test]
fn enumerate_chain_product() {
    let out = run(&["enumerate", "--poset", "chainproduct:2,2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("6 order ideals"));
}

#[test]
fn enumerate_respects_desk_cap() {
    let out = run(&["enumerate", "--poset", "asm:7"]);
    assert_eq!(out.status.code(), Some(2));
    let raised = bin()
        .args(["enumerate", "--poset", "asm:6"])
        .env("POSET_DYNAMICS_MAX_N", "6")
        .output()
        .unwrap();
    assert!(raised.status.success());
    assert!(stdout(&raised).contains("7436 order ideals"));
}

#[test]
fn random_source_requires_seed() {
    let out = run(&["enumerate", "--poset", "random:6"]);
    assert_eq!(out.status.code(), Some(2));
    let with_seed = run(&["enumerate", "--poset", "random:6", "--seed", "11"]);
    assert!(with_seed.status.success());
}

#[test]
fn orbits_gyration_asm3() {
    let out = run(&["orbits", "--poset", "asm:3", "--action", "gyr"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("3 orbits"));
    assert!(stdout(&out).contains("[2, 2, 3]"));
}

#[test]
fn homomesy_toggleability_all_elements() {
    let out = run(&["homomesy", "--poset", "asm:3", "--action", "row", "--statistic", "toggleability"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).matches("c = 0").count(), 4);
}

#[test]
fn homomesy_counterexample_fails_with_exit_one() {
    let out = run(&[
        "homomesy",
        "--poset",
        "counterexample6",
        "--action",
        "word:0,2,1",
        "--statistic",
        "toggleability:2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("1/2"));
    assert!(text.contains("-1/3"));
}

#[test]
fn rs_check_passes_and_dlm_matches() {
    for args in [
        vec!["rs", "check", "--n", "3"],
        vec!["rs", "check", "--n", "2", "--mode", "dlm", "--p", "1/2"],
        vec!["rs", "check", "--n", "3", "--mode", "dlm", "--p", "1/3"],
    ] {
        let out = run(&args);
        assert!(out.status.success(), "args {args:?}");
    }
}

#[test]
fn rs_check_rejects_oversized_order() {
    let out = run(&["rs", "check", "--n", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("desk-scale bound"));
}

#[test]
fn dlm_stationary_is_p_independent_in_reports() {
    let dir = tempfile::tempdir().unwrap();
    let mut vectors = Vec::new();
    for (i, p) in ["1/4", "1/3", "1/2"].iter().enumerate() {
        let path = dir.path().join(format!("v{i}.json"));
        let out = bin()
            .args(["dlm", "stationary", "--n", "3", "--p", p, "--out"])
            .arg(&path)
            .output()
            .unwrap();
        assert!(out.status.success());
        let report: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        vectors.push(report["result"]["coords"].clone());
    }
    assert_eq!(vectors[0], vectors[1]);
    assert_eq!(vectors[1], vectors[2]);
}

#[test]
fn corollary41_reports_balance_and_literal_sign_failure() {
    let out = run(&["corollary41", "--n", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("[pass] orbit_counts_balanced"));
    assert!(text.contains("[pass] refinement_checkerboard_signed"));
    assert!(text.contains("[FAIL] refinement_literal"));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = bin()
            .args(["enumerate", "--poset", "asm:4", "--out"])
            .arg(path)
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

fn write_worked_asm(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("asm.json");
    std::fs::write(
        &path,
        serde_json::to_string(&vec![
            vec![0, 0, 1, 0],
            vec![1, 0, -1, 1],
            vec![0, 0, 1, 0],
            vec![0, 1, 0, 0],
        ])
        .unwrap(),
    )
    .unwrap();
    path
}

#[test]
fn asm_convert_chain() {
    let dir = tempfile::tempdir().unwrap();
    let asm_path = write_worked_asm(dir.path());

    // asm -> height
    let height_report = dir.path().join("height.json");
    let out = bin()
        .args(["asm", "convert", "--from", "asm", "--to", "height", "--input"])
        .arg(&asm_path)
        .arg("--out")
        .arg(&height_report)
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&height_report).unwrap()).unwrap();
    assert_eq!(
        report["result"]["value"],
        serde_json::json!([
            [0, 1, 2, 3, 4],
            [1, 2, 3, 2, 3],
            [2, 1, 2, 3, 2],
            [3, 2, 3, 2, 1],
            [4, 3, 2, 1, 0]
        ])
    );

    // asm -> cornersum
    let out = bin()
        .args(["asm", "convert", "--from", "asm", "--to", "cornersum", "--input"])
        .arg(&asm_path)
        .output()
        .unwrap();
    assert!(out.status.success());

    // asm -> fpl, then fpl link recovers the worked pattern.
    let fpl_report = dir.path().join("fpl.json");
    let out = bin()
        .args(["asm", "convert", "--from", "asm", "--to", "fpl", "--input"])
        .arg(&asm_path)
        .arg("--out")
        .arg(&fpl_report)
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&fpl_report).unwrap()).unwrap();
    let fpl_path = dir.path().join("grid.json");
    std::fs::write(&fpl_path, report["result"]["value"].to_string()).unwrap();

    let link_report = dir.path().join("link.json");
    let out = bin()
        .args(["fpl", "link", "--input"])
        .arg(&fpl_path)
        .arg("--out")
        .arg(&link_report)
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&link_report).unwrap()).unwrap();
    assert_eq!(
        report["result"]["pairs"],
        serde_json::json!([[1, 8], [2, 5], [3, 4], [6, 7]])
    );

    // fpl gyrate keeps the grid valid and render draws something.
    let out = bin().args(["fpl", "gyrate", "--input"]).arg(&fpl_path).output().unwrap();
    assert!(out.status.success());
    let out = bin().args(["fpl", "render", "--input"]).arg(&fpl_path).output().unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains('o'));

    // ideal -> asm round trip through the record format.
    let ideal_report = dir.path().join("ideal.json");
    let out = bin()
        .args(["asm", "convert", "--from", "asm", "--to", "ideal", "--input"])
        .arg(&asm_path)
        .arg("--out")
        .arg(&ideal_report)
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&ideal_report).unwrap()).unwrap();
    let ideal_path = dir.path().join("rec.json");
    std::fs::write(&ideal_path, report["result"]["value"].to_string()).unwrap();
    let back_report = dir.path().join("back.json");
    let out = bin()
        .args(["asm", "convert", "--from", "ideal", "--to", "asm", "--input"])
        .arg(&ideal_path)
        .arg("--out")
        .arg(&back_report)
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&back_report).unwrap()).unwrap();
    assert_eq!(
        report["result"]["value"],
        serde_json::json!([[0, 0, 1, 0], [1, 0, -1, 1], [0, 0, 1, 0], [0, 1, 0, 0]])
    );
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "[[1, -1, 0], [0, 1, 0], [0, 0, 1]]").unwrap();
    let out = bin()
        .args(["asm", "convert", "--from", "asm", "--to", "height", "--input"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
