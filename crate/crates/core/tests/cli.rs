//! End-to-end runs of the `shiftlab` binary.

use std::process::Command;

fn shiftlab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_shiftlab"))
}

fn write_config(dir: &tempfile::TempDir, text: &str) -> std::path::PathBuf {
    let path = dir.path().join("config.json");
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn run_writes_json_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        &dir,
        r#"{"target":"entropy1d","shift":{"alphabet":2,"kind":"forbidden","forbidden":["11"]},"n":3}"#,
    );
    let out = shiftlab().arg("run").arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["rows"][2]["count"], "5");
    assert_eq!(report["passed"], true);
}

#[test]
fn csv_output_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, r#"{"target":"density","tree":{"d":2,"rows":["11","11"]},"set":"even_levels","n":3}"#);
    let target = dir.path().join("out.csv");
    let out = shiftlab()
        .args(["run", "--format", "csv", "--output"])
        .arg(&target)
        .arg(&cfg)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(target).unwrap();
    assert!(text.starts_with("n,count,ratio\n"), "{text}");
}

#[test]
fn reproduce_is_deterministic() {
    let run = || shiftlab().args(["reproduce", "thm4", "--depth", "5"]).output().unwrap();
    let (a, b) = (run(), run());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn failed_assertion_exits_one() {
    let out = shiftlab().args(["reproduce", "thm1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let failed: Vec<&str> = report["assertions"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|a| a["passed"] == false)
        .map(|a| a["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["final_clause_below_threshold"]);
}

#[test]
fn errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, r#"{"target":"entropy1d","shift":{"alphabet":2,"kind":"full"},"n":"x"}"#);
    let out = shiftlab().arg("run").arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("config error at"), "{err}");

    let out = shiftlab().args(["run", "/nonexistent/config.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let good = write_config(&dir, r#"{"target":"entropy1d","shift":{"alphabet":2,"kind":"full"},"n":2}"#);
    let out = shiftlab()
        .args(["run", "--output", "/nonexistent-dir/x/out.json"])
        .arg(&good)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cap_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let hs = r#"{"alphabet":2,"forbidden":[{"dims":[1,2],"cells":"11"},{"dims":[2,1],"cells":"11"}]}"#;
    let cfg = write_config(&dir, &format!(r#"{{"target":"indep2d","shift":{hs},"windows":[[4,4]]}}"#));
    let out = shiftlab().arg("run").arg(&cfg).env("SHIFTLAB_CAP", "10").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("cap"));
}

#[test]
fn help_lists_commands() {
    let out = shiftlab().arg("--help").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("run") && text.contains("reproduce"));
}
