use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn g2lift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2lift")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    g2lift(args).status.code().unwrap()
}

fn report(path: &Path) -> Value {
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.ends_with('\n'));
    serde_json::from_str(&text).unwrap()
}

/// The report without its run-dependent fields.
fn stable(mut v: Value) -> Value {
    let o = v.as_object_mut().unwrap();
    o.remove("wall_time_s");
    if let Some(t) = o.get_mut("task").and_then(Value::as_object_mut) {
        t.remove("checkpoint");
    }
    if let Some(r) = o.get_mut("report").and_then(Value::as_object_mut) {
        r.remove("restored");
    }
    v
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["verify-scalars", "--N", "5", "--a", "0"]), 0);
    assert_eq!(code(&["verify-scalars", "--N", "3", "--a", "0"]), 2);
    assert_eq!(code(&["verify-scalars", "--N", "5", "--a", "0", "--no-such-flag"]), 2);
    assert_eq!(code(&["verify-scalars", "--N", "5", "--a", "0", "--case", "divisible"]), 2);
    assert_eq!(code(&["verify-scalars", "--N", "9", "--a", "0"]), 1);
    assert_eq!(code(&["lift", "--N", "5", "--a", "0", "--case", "degenerate"]), 2);
    assert_eq!(code(&["confluence", "--N", "7", "--a", "3", "--kind", "cleft-lambda"]), 0);
}

#[test]
fn summary_line_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = g2lift(&["verify-scalars", "--N", "5", "--a", "1", "--out", out.to_str().unwrap()]);
    let line = String::from_utf8(o.stdout).unwrap();
    assert!(line.starts_with("verify-scalars N=5 a=1: PASS ("), "{line}");
    let r = report(&out);
    assert_eq!(r["command"], "verify-scalars");
    assert_eq!(r["passed"], true);
    assert_eq!(r["config"]["N"], 5);
    assert_eq!(r["report"]["M"], 5);
    assert_eq!(r["task"]["case"], "coprime");
    assert!(r["wall_time_s"].as_f64().unwrap() >= 0.0);
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"N": 7, "a": 2}"#).unwrap();
    let out = dir.path().join("r.json");
    let c = cfg.to_str().unwrap();
    assert_eq!(code(&["support", "--config", c, "--out", out.to_str().unwrap()]), 0);
    assert_eq!(report(&out)["config"]["a"], 2);
    assert_eq!(code(&["support", "--config", c, "--a", "5", "--out", out.to_str().unwrap()]), 0);
    assert_eq!(report(&out)["config"]["a"], 5);
    std::fs::write(&cfg, "not json").unwrap();
    assert_eq!(code(&["support", "--config", c]), 2);
}

#[test]
fn reports_do_not_depend_on_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let base = ["hilbert", "--N", "5", "--a", "0", "--kind", "pre-nichols", "--bound", "8,5"];
    assert_eq!(code(&[&base[..], &["--jobs", "1", "--out", a.to_str().unwrap()]].concat()), 0);
    assert_eq!(code(&[&base[..], &["--out", b.to_str().unwrap()]].concat()), 0);
    assert_eq!(stable(report(&a)), stable(report(&b)));
}

#[test]
fn lift_resumes_from_checkpoints() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ck");
    let first = dir.path().join("first.json");
    let second = dir.path().join("second.json");
    let args = |out: &Path| {
        vec!["lift", "--N", "7", "--a", "3", "--root", "1,2,12", "--checkpoint-dir", ck.to_str().unwrap(), "--out", out.to_str().unwrap()]
            .into_iter()
            .map(String::from)
            .collect::<Vec<_>>()
    };
    let run = |out: &Path| Command::new(env!("CARGO_BIN_EXE_g2lift")).args(args(out)).output().unwrap().status.code().unwrap();
    assert_eq!(run(&first), 0);
    assert_eq!(run(&second), 0);
    let (f, s) = (report(&first), report(&second));
    assert_eq!(f["report"]["restored"].as_array().unwrap().len(), 0);
    assert_eq!(s["report"]["restored"].as_array().unwrap().len(), 3);
    assert_eq!(stable(f), stable(s));
}
