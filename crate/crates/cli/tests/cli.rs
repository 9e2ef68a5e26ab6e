use std::path::Path;
use std::process::{Command, Output};

fn bnineq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bnineq"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn lists_every_statement() {
    let out = bnineq(&["list-statements"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 22);
    assert!(text.lines().any(|l| l.starts_with("t3 ")));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(
        code(&bnineq(&["verify", "--statement", "t2", "--k", "1.5"])),
        2
    );
    assert_eq!(code(&bnineq(&["verify", "--statement", "t9"])), 2);
    assert_eq!(code(&bnineq(&["verify", "--n", "0..3"])), 2);
    assert_eq!(
        code(&bnineq(&["verify", "--alpha", "2,0", "--statement", "c2"])),
        2
    );
    assert_eq!(code(&bnineq(&["verify", "--bogus"])), 2);
    assert_eq!(code(&bnineq(&["sharpness", "--statement", "eq1"])), 2);
}

#[test]
fn clean_run_writes_a_report_and_its_worst_case_replays() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let out = bnineq(&[
        "verify",
        "--statement",
        "t2",
        "--statement",
        "c3",
        "--cases",
        "40",
        "--seed",
        "9",
        "--out",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = read_json(&report_path);
    assert_eq!(report["schema"], "bnineq/report/v1");
    assert_eq!(report["statements"].as_array().unwrap().len(), 2);

    for summary in report["statements"].as_array().unwrap() {
        assert_eq!(summary["violations"], 0);
        let worst = &summary["worst"];
        let case_path = dir.path().join("case.json");
        std::fs::write(&case_path, serde_json::to_string(&worst["case"]).unwrap()).unwrap();
        let out = bnineq(&["case", "--input", case_path.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
        let replayed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let original = worst["results"].as_array().unwrap();
        let replayed = replayed.as_array().unwrap();
        assert_eq!(original.len(), replayed.len());
        for (a, b) in original.iter().zip(replayed) {
            assert_eq!(a["lhs"].as_f64(), b["lhs"].as_f64());
            assert_eq!(a["rhs"].as_f64(), b["rhs"].as_f64());
        }
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = bnineq(&[
            "verify",
            "--cases",
            "15",
            "--seed",
            "4",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn shrunk_right_side_is_caught_and_still_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    let out = bnineq(&[
        "verify",
        "--statement",
        "c2",
        "--cases",
        "100",
        "--rhs-scale",
        "0.9",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    let report = read_json(&path);
    assert!(report["statements"][0]["violations"].as_u64().unwrap() >= 1);
}

#[test]
fn extremal_monomial_case_is_an_equality() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("extremal_c2.json");
    let case = r#"{
        "statement": "c2",
        "operator": {"n": 3, "lambda": [[1, 0], [0, 0], [0, 0]]},
        "p": {"n": 3, "coeffs": [[0, 0], [0, 0], [0, 0], [2, 0]]},
        "params": {"k": 1, "r": 1, "R": 2, "zs": [[1, 0], [0, 1.5]]}
    }"#;
    std::fs::write(&path, case).unwrap();
    let out = bnineq(&["case", "--input", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let results: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for r in results.as_array().unwrap() {
        let (lhs, rhs) = (r["lhs"].as_f64().unwrap(), r["rhs"].as_f64().unwrap());
        assert!((lhs - rhs).abs() <= 1e-9 * rhs, "{lhs} vs {rhs}");
    }
    // α = β = 0 gives Φ = 0, so both sides are 2 R^3 |z|^3 = 16 at z = 1
    assert!((results[0]["lhs"].as_f64().unwrap() - 16.0).abs() < 1e-12);
}

#[test]
fn invalid_case_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    // zero of P inside |z| < k for t2
    let case = r#"{
        "statement": "t2",
        "operator": {"n": 1, "lambda": [[1, 0], [0, 0], [0, 0]]},
        "p": {"n": 1, "coeffs": [[0.5, 0], [1, 0]]},
        "params": {"k": 1, "r": 1, "R": 2, "zs": [[1, 0]]}
    }"#;
    std::fs::write(&path, case).unwrap();
    assert_eq!(
        code(&bnineq(&["case", "--input", path.to_str().unwrap()])),
        2
    );
    assert_eq!(
        code(&bnineq(&["case", "--input", "/nonexistent/case.json"])),
        2
    );
}

#[test]
fn csv_report_to_stdout() {
    let out = bnineq(&[
        "verify",
        "--statement",
        "l1",
        "--cases",
        "5",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(text.starts_with("statement,index,n,"));
}

#[test]
fn sharpness_subcommand_reports_a_small_gap() {
    let out = bnineq(&[
        "sharpness",
        "--statement",
        "t2",
        "--cases",
        "20",
        "--seed",
        "3",
    ]);
    assert_eq!(code(&out), 0);
    let entry: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(entry["max_rel_gap"].as_f64().unwrap() < 1e-6);
}
