//! End-to-end checks of the `spin` binary: exit codes, determinism, and
//! the documented subcommand surface.

use std::path::Path;
use std::process::Command;

fn spin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spin"))
}

fn golden(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn supports_subcommand() {
    let out = spin().args(["supports", &golden("banana_curve.json")]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("weighted total 256"), "{text}");
    assert!(text.contains("[singular]"));
}

#[test]
fn local_subcommand() {
    let out = spin().args(["local", "--delta", "3"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("jacobian rank at origin: 0"));
    assert!(text.contains("residuals all zero: true"));
}

#[test]
fn verify_subcommand_exit_codes() {
    let ok = spin()
        .args(["verify", "--g1", "1", "--g2", "1", "--delta", "2", "--q", "5"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let text = String::from_utf8(ok.stdout).unwrap();
    assert!(text.contains("labels=128"), "{text}");

    // composite q is an input error
    let bad = spin()
        .args(["verify", "--g1", "1", "--g2", "1", "--delta", "2", "--q", "9"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));

    // missing file is an input error with a diagnostic only
    let missing = spin().args(["supports", "/no/such/file.json"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8(missing.stdout).unwrap().starts_with("error:"));
}

#[test]
fn json_output_is_byte_deterministic() {
    let run = || {
        spin()
            .args(["strata", "--g1", "1", "--g2", "1", "--delta", "3", "--q", "5", "--format", "json"])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run(), run());
}
