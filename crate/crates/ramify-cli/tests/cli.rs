//! Black-box checks of the binary: headline values on stdout, exit codes,
//! and byte-reproducible JSON reports.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ramify"))
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("ramify-cli-{}-{name}.json", std::process::id()))
}

#[test]
fn intersection_prints_the_quintic_and_its_value() {
    let out = bin().args(["intersection", "--g", "5"]).output().unwrap();
    assert!(out.status.success(), "exit: {:?}", out.status);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("9*g^5 - 51*g^4 + 129*g^3 - 207*g^2 + 174*g - 54"), "{text}");
    assert!(text.contains("8016"), "{text}");
    assert!(text.contains("pass"), "{text}");
}

#[test]
fn relation_ratios_are_printed_exactly() {
    let out = bin().args(["solve-relations", "--g", "7"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("a_2/a_1 = 5/3"), "{text}");
    assert!(text.contains("a_3/a_1 = 2"), "{text}");
}

#[test]
fn json_reports_are_byte_identical_without_timestamps() {
    let (p1, p2) = (scratch("rep1"), scratch("rep2"));
    for p in [&p1, &p2] {
        let out = bin()
            .args(["solve-relations", "--g", "9", "--no-timestamp", "--json"])
            .arg(p)
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    let (b1, b2) = (std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    assert_eq!(b1, b2, "reports differ between identical runs");
    let body = String::from_utf8(b1).unwrap();
    assert!(body.contains("\"status\": \"pass\""), "{body}");
    assert!(body.contains("\"seed\": 42"), "{body}");
    assert!(!body.contains("timestamp"), "{body}");
    std::fs::remove_file(&p1).ok();
    std::fs::remove_file(&p2).ok();
}

#[test]
fn timestamped_reports_carry_the_volatile_fields() {
    let path = scratch("stamped");
    let out = bin()
        .args(["flag-check", "--g", "3", "--sweep", "2", "--json"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.contains("\"timestamp\""), "{body}");
    assert!(body.contains("\"runtime_ms\""), "{body}");
    std::fs::remove_file(&path).ok();
}

#[test]
fn unknown_flags_are_usage_errors() {
    let out = bin().args(["intersection", "--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2), "expected usage exit code");
    let out = bin().args(["no-such-command"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2), "expected usage exit code");
}

#[test]
fn elliptic_suite_passes_at_a_chosen_genus() {
    let out = bin().args(["verify-elliptic", "--g", "5", "--samples", "3"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verify-elliptic"), "{text}");
    assert!(text.contains("0 failed"), "{text}");
}

#[test]
fn full_run_passes() {
    let path = scratch("all");
    let out = bin()
        .args(["all", "--seed", "42", "--samples", "5", "--no-timestamp", "--json"])
        .arg(&path)
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    for suite in [
        "verify-rational",
        "verify-elliptic",
        "intersection",
        "solve-relations",
        "flag-check",
    ] {
        assert!(text.contains(suite), "missing {suite}: {text}");
    }
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.contains("\"suite\": \"all\""), "{body}");
    assert!(body.contains("\"status\": \"pass\""), "{body}");
    std::fs::remove_file(&path).ok();
}
