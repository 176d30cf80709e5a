//! CLI behavior: exit codes and parse diagnostics.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wvsim"))
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wvsim-cli-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn successful_run_exits_zero_and_prints_the_summary() {
    let dir = temp_dir("ok");
    let file = dir.join("s.txt");
    fs::write(&file, "protocol = stwm\nn_particles = 3\n").unwrap();
    let out = bin()
        .args(["run"])
        .arg(&file)
        .arg("--out")
        .arg(dir.join("out"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("success_probability = 1.25"));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn validation_errors_exit_one_with_line_numbers() {
    let dir = temp_dir("bad");
    let file = dir.join("s.txt");
    fs::write(&file, "protocol = swm\nlambda = -1\nwavelength = 2\n").unwrap();
    let out = bin()
        .args(["run"])
        .arg(&file)
        .arg("--out")
        .arg(dir.join("out"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "stderr: {err}");
    assert!(err.contains("line 3"), "stderr: {err}");
    assert!(err.contains("unknown key `wavelength`"));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn runtime_errors_exit_two() {
    // orthogonal pre/post selection: the weak value is undefined
    let dir = temp_dir("orth");
    let file = dir.join("s.txt");
    fs::write(&file, "protocol = stwm\npre = x+\npost = x-\n").unwrap();
    let out = bin()
        .args(["run"])
        .arg(&file)
        .arg("--out")
        .arg(dir.join("out"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("orthogonal selection"), "stderr: {err}");
    fs::remove_dir_all(&dir).unwrap();

    let out = bin()
        .args(["weak-value", "--pre", "x+", "--post", "x-", "--observable", "z"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_scenario_file_is_a_runtime_error() {
    let out = bin().args(["run", "/nonexistent/path.txt"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validity_subcommand_prints_the_report() {
    let out = bin()
        .args(["validity", "--alpha", "1.5", "--lambda", "1.4", "--n", "50"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("regime_lhs = 2.45"));
    assert!(text.contains("regime_ok = 0"));
    assert!(text.contains("eccentric = 1"));
}
