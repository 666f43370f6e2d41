use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
}

fn run(args: &[&str], file: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistcross"))
        .args(&args[..1])
        .arg(file)
        .args(&args[1..])
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_doc(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".tc").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn verify_action_exit_codes() {
    let ok = run(&["verify-action"], &corpus("quaternion.tc"));
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("action H over Q: pass"));
    let bad = run(&["verify-action"], &corpus("quaternion_corrupt.tc"));
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL  CocycleIdentity at (a, a, b), basis vector 0"));
}

#[test]
fn verify_action_json() {
    let o = run(&["verify-action", "--format", "json"], &corpus("quaternion_corrupt.tc"));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "fail");
    let checks = v["report"]["checks"].as_array().unwrap();
    let failed: Vec<_> = checks.iter().filter(|c| !c["witness"].is_null()).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["witness"]["elements"], serde_json::json!(["a", "a", "b"]));
}

#[test]
fn identities_command() {
    let o = run(&["identities"], &corpus("z3_cyclic.tc"));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("  ok")).count(), 9);
    let o = run(&["identities"], &corpus("quaternion_corrupt.tc"));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn check_grading_and_criteria() {
    let o = run(&["check-grading"], &corpus("dual_numbers.tc"));
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["check-criteria"], &corpus("dual_numbers.tc"));
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("REJECT condition (i) at g witness x"));
    let o = run(&["check-criteria", "--route", "uv", "--seed", "3"], &corpus("m2_z2.tc"));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("grading B over Q: certificate"));
}

#[test]
fn criteria_json_is_deterministic() {
    let args = ["check-criteria", "--format", "json", "--seed", "11", "--trials", "50"];
    let a = run(&args, &corpus("twisted_z2.tc"));
    let b = run(&args, &corpus("twisted_z2.tc"));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["verdict"], "certificate");
    assert_eq!(v["budget"]["seed"], 11);
    assert_eq!(v["budget"]["trials"], 50);
    assert!(v["certificate"]["action_text"].as_str().unwrap().contains("action"));
}

#[test]
fn build_crossed_output_is_a_certified_grading() {
    let o = run(&["build-crossed"], &corpus("z3_cyclic.tc"));
    assert_eq!(o.status.code(), Some(0));
    let doc = temp_doc(&stdout(&o));
    let o = run(&["check-criteria"], doc.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn amplify_preserves_verdicts() {
    let o = run(&["amplify", "--n", "0"], &corpus("kz2.tc"));
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["amplify", "--n", "2", "--name", "B"], &corpus("m2_z2.tc"));
    assert_eq!(o.status.code(), Some(0));
    let doc = temp_doc(&stdout(&o));
    assert_eq!(run(&["check-criteria"], doc.path()).status.code(), Some(0));
    let o = run(&["amplify", "--n", "2"], &corpus("dual_numbers.tc"));
    let doc = temp_doc(&stdout(&o));
    assert_eq!(run(&["check-criteria"], doc.path()).status.code(), Some(1));
}

#[test]
fn input_errors_exit_3() {
    let o = run(&["verify-action"], &corpus("errors/unknown_basis.tc"));
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("6:6: semantic error: unknown basis element 'e3'"));
    let o = run(&["verify-action"], Path::new("/nonexistent.tc"));
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["check-grading", "--field", "F4"], &corpus("m2_z2.tc"));
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn field_override() {
    let o = run(&["check-criteria", "--field", "F7"], &corpus("m2_z2.tc"));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("over F 7: certificate"));
}

#[test]
fn undecided_exit_code() {
    let args = ["check-criteria", "--trials", "0", "--enum-budget", "0"];
    let o = run(&args, &corpus("m2_f5.tc"));
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert!(stdout(&o).contains("UNDECIDED solver budget exhausted"));
}
