use std::path::Path;
use std::process::{Command, Output};

fn kmprop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kmprop")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn classify_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("[[2,-1],[-1,2]]", "finite"),
        ("[[2,-2],[-2,2]]", "affine"),
        ("[[2,-3],[-2,2]]", "indefinite"),
    ];
    for (i, (m, class)) in cases.iter().enumerate() {
        let f = write(dir.path(), &format!("g{i}.json"), m);
        let o = kmprop(&["classify", &f]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), *class);
    }
    let f = write(dir.path(), "d.json", r#"{"matrix": [[2,0],[0,2]], "labels": ["a","b"]}"#);
    let o = kmprop(&["classify", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("decomposable"));
}

#[test]
fn invalid_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "[[2,-1],[0,2]]");
    assert_eq!(kmprop(&["classify", &bad]).status.code(), Some(2));
    let good = write(dir.path(), "a2.json", "[[2,-1],[-1,2]]");
    assert_eq!(kmprop(&["roots", &good, "--height", "0"]).status.code(), Some(2));
    let campaign = write(dir.path(), "c.json", r#"{"instances": [{"model": "bch", "q": 6, "H": 3, "checks": ["theorem1"]}]}"#);
    assert_eq!(kmprop(&["verify", &campaign]).status.code(), Some(2));
    assert_eq!(kmprop(&["classify", "/nonexistent/gcm.json"]).status.code(), Some(2));
}

#[test]
fn root_counts() {
    let dir = tempfile::tempdir().unwrap();
    for (m, h, total, imaginary) in [("[[2,-1],[-1,2]]", "3", 3, 0), ("[[2,-2],[-2,2]]", "4", 6, 2), ("[[2]]", "5", 1, 0)] {
        let f = write(dir.path(), "g.json", m);
        let o = kmprop(&["roots", &f, "--height", h]);
        assert_eq!(o.status.code(), Some(0));
        let last = stdout(&o).lines().last().unwrap().to_string();
        assert_eq!(last, format!("{total} positive roots, {imaginary} imaginary"));

        let o = kmprop(&["roots", &f, "--height", h, "--json"]);
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v.as_array().unwrap().len(), total);
    }
}

#[test]
fn skipped_instances_exit_0() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(
        dir.path(),
        "skip.json",
        r#"{"instances": [
            {"model": "bch", "gcm": [[2,-1],[-1,2]], "q": 4, "H": 3, "checks": ["theorem1"]},
            {"model": "bch", "gcm": [[2,-1],[-1,2]], "q": 5, "H": 3, "checks": ["theorem1"]}
        ]}"#,
    );
    let o = kmprop(&["verify", &c]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("CharacteristicTooSmall"));
    assert!(out.contains("1 passed, 0 failed, 1 skipped"));
}

#[test]
fn report_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(
        dir.path(),
        "c.json",
        r#"{"seed": 7, "samples": 50, "instances": [
            {"model": "bch", "gcm": [[2,-1],[-2,2]], "q": 5, "H": 4, "checks": ["theorem1", "properties"]},
            {"model": "affine", "m": 2, "k": 2, "q": 3, "checks": ["cor_linear", "generation", "tits"]}
        ]}"#,
    );
    let out = dir.path().join("report.json");
    let o = kmprop(&["verify", &c, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = kmprop(&["verify", "--verify-report", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("5 results match"));
}

#[test]
fn tampered_report_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(dir.path(), "c.json", r#"{"instances": [{"model": "affine", "m": 2, "k": 2, "q": 3, "checks": ["cor_linear"]}]}"#);
    let out = dir.path().join("report.json");
    assert_eq!(kmprop(&["verify", &c, "--out", out.to_str().unwrap()]).status.code(), Some(0));
    let mut report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    report["results"][0]["details"]["h1_blackbox"] = serde_json::json!(3);
    std::fs::write(&out, report.to_string()).unwrap();
    assert_eq!(kmprop(&["verify", "--verify-report", out.to_str().unwrap()]).status.code(), Some(1));
}
