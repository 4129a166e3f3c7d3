//! End-to-end tests against the compiled binary: exit codes, report
//! determinism, and the documented text surfaces.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn latnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latnet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn write(path: &Path, text: &str) {
    fs::write(path, text).expect("write fixture");
}

const SMALL_CONFIG: &str = "# fast verification profile\nn = 4096\nx = 32\nk = 24\nseed = 11\n";

#[test]
fn lattice_e8_is_unimodular_with_240_roots() {
    let out = latnet(&["lattice", "--dynkin", "E8"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("mu-index: 1"), "{text}");
    assert!(text.contains("discriminant group: trivial"), "{text}");
    assert!(text.contains("roots (norm 2): 240"), "{text}");
}

#[test]
fn lattice_a1_sector_spins_are_fourth_roots() {
    let out = latnet(&["lattice", "--dynkin", "A1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("mu-index: 2"), "{text}");
    assert!(text.contains("[0] | 1 | 1"), "{text}");
    assert!(text.contains("[1] | 2 | i"), "{text}");
}

#[test]
fn lattice_gram_file_roundtrip_matches_dynkin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a2.gram");
    write(&path, "2 -1\n-1 2  # A2 in the simple-root basis\n");
    let from_file = latnet(&["lattice", "--gram-file", path.to_str().unwrap()]);
    let from_label = latnet(&["lattice", "--dynkin", "A2"]);
    assert!(from_file.status.success());
    assert_eq!(stdout(&from_file), stdout(&from_label));
}

#[test]
fn lattice_malformed_gram_exits_2() {
    let dir = tempfile::tempdir().unwrap();

    let ragged = dir.path().join("ragged.gram");
    write(&ragged, "2 1\n1\n");
    let out = latnet(&["lattice", "--gram-file", ragged.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let odd = dir.path().join("odd.gram");
    write(&odd, "1 0\n0 2\n");
    let out = latnet(&["lattice", "--gram-file", odd.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let junk = dir.path().join("junk.gram");
    write(&junk, "2 x\nx 2\n");
    let out = latnet(&["lattice", "--gram-file", junk.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let missing_source = latnet(&["lattice"]);
    assert_eq!(missing_source.status.code(), Some(2));
}

#[test]
fn verify_is_green_and_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    write(&cfg, SMALL_CONFIG);
    let out_dir = dir.path().join("report");
    let args = [
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ];
    let first = latnet(&args);
    assert!(
        first.status.success(),
        "verify failed:\n{}",
        stdout(&first)
    );
    let second = latnet(&args);
    assert_eq!(first.stdout, second.stdout, "report not reproducible");

    let text = fs::read_to_string(out_dir.join("report.txt")).unwrap();
    assert_eq!(text.as_bytes(), &first.stdout[..], "file twin differs");
    let csv = fs::read_to_string(out_dir.join("report.csv")).unwrap();
    assert!(csv.starts_with("id,defect,tolerance,pass,params\n"));
    assert_eq!(csv.lines().count(), 13, "12 checks plus header");
}

#[test]
fn verify_seed_flag_changes_samples_not_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    write(&cfg, SMALL_CONFIG);
    let base = ["verify", "--config", cfg.to_str().unwrap()];
    let a = latnet(&[&base[..], &["--seed", "3"]].concat());
    let b = latnet(&[&base[..], &["--seed", "4"]].concat());
    assert!(a.status.success());
    assert!(b.status.success());
    assert_ne!(a.stdout, b.stdout, "sampled defects should move with the seed");
}

#[test]
fn verify_tight_tolerance_fails_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    write(&cfg, SMALL_CONFIG);
    let out = latnet(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--tolerance",
        "locality=1e-18",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL  locality"), "{text}");
}

#[test]
fn verify_single_check_and_unknown_check() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    write(&cfg, SMALL_CONFIG);
    let out = latnet(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--check",
        "mu_index_table",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 2, "one check plus summary");

    let unknown = latnet(&["verify", "--check", "no_such_check"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn inner_blaschke_spec_passes_all_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("phi.cfg");
    write(&spec, "zeros = [i]\nt = 0.25\n");
    let out_dir = dir.path().join("samples");
    let out = latnet(&[
        "inner",
        spec.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
        "--samples",
        "17",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert_eq!(text.matches("PASS").count(), 3, "{text}");
    let csv = fs::read_to_string(out_dir.join("samples.csv")).unwrap();
    assert_eq!(csv.lines().count(), 18, "17 samples plus header");
}

#[test]
fn inner_sign_flip_fails_boundary_regularity() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("phi.cfg");
    write(&spec, "sign = -1\n");
    let out = latnet(&["inner", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("boundary-regularity: FAIL"), "{text}");
    assert_eq!(text.matches("PASS").count(), 2, "{text}");
}

#[test]
fn inner_malformed_spec_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("phi.cfg");
    write(&spec, "zeros = [1+2j]\n");
    let out = latnet(&["inner", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
