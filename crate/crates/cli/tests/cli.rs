//! End-to-end runs of the `kstab` binary: exit statuses, output contracts,
//! determinism and mutation detection.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn shipped() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn kstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kstab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let o = kstab(args);
    (
        o.status.code().expect("exited normally"),
        String::from_utf8(o.stdout).unwrap(),
        String::from_utf8(o.stderr).unwrap(),
    )
}

fn copy_dir(from: &Path, to: &Path) {
    fs::create_dir_all(to).unwrap();
    for entry in fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        let target = to.join(entry.file_name());
        if entry.file_type().unwrap().is_dir() {
            copy_dir(&entry.path(), &target);
        } else {
            fs::copy(entry.path(), target).unwrap();
        }
    }
}

/// A temporary copy of the shipped corpus with one textual edit applied.
fn mutated(file: &str, from: &str, to: &str) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    copy_dir(&shipped(), dir.path());
    let path = dir.path().join(file);
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.contains(from), "{file} does not contain {from:?}");
    fs::write(&path, text.replacen(from, to, 1)).unwrap();
    dir
}

fn root(dir: &tempfile::TempDir) -> &str {
    dir.path().to_str().unwrap()
}

#[test]
fn verify_shipped_corpus_succeeds() {
    let (code, out, err) = run(&["verify", shipped().to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("2.22/Qtilde S=43/60 beta=17/60 OK\n"), "{out}");
    assert!(out.contains(" certificates, 0 failed, "));
    assert!(err.is_empty(), "{err}");
}

#[test]
fn verify_is_byte_identical_across_runs() {
    let a = kstab(&["verify", shipped().to_str().unwrap()]);
    let b = kstab(&["verify", shipped().to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
}

#[test]
fn verify_empty_corpus_reports_zero_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = run(&["verify", root(&dir)]);
    assert_eq!(code, 0);
    assert_eq!(out, "0 certificates\n");
}

#[test]
fn missing_corpus_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("absent");
    let (code, _, err) = run(&["verify", missing.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn parse_error_exits_with_two_and_names_the_line() {
    let dir = mutated("4.13/certs/Rxy.txt", "tau = \"2\"", "tau = = \"2\"");
    let (code, _, err) = run(&["verify", root(&dir)]);
    assert_eq!(code, 2);
    assert!(err.contains("Rxy.txt:"), "{err}");
}

#[test]
fn negated_negative_coefficient_exits_with_one() {
    let dir = mutated("2.22/certs/Qtilde.txt", "E = \"u-1\"", "E = \"1-u\"");
    let (code, out, err) = run(&["verify", root(&dir)]);
    assert_eq!(code, 1);
    assert!(out.contains("  check n-nonnegative FAIL\n"), "{out}");
    assert!(err.starts_with("2.22/Qtilde: check "), "{err}");
}

#[test]
fn gap_in_v_tiling_exits_with_one() {
    let dir = mutated("2.22/certs/Ctilde.txt", "v = [\"u\", \"(2+u)/2\"]", "v = [\"u+1/10\", \"(2+u)/2\"]");
    let (code, out, err) = run(&["verify", root(&dir)]);
    assert_eq!(code, 1);
    assert!(out.contains("  check v-tiling FAIL\n"), "{out}");
    assert!(err.contains("2.22/Ctilde: check "), "{err}");
}

#[test]
fn wrong_expected_value_on_established_certificate_exits_with_one() {
    let dir = mutated("4.13/certs/Rxy.txt", "expected_S = \"49/52\"", "expected_S = \"50/52\"");
    let (code, out, err) = run(&["verify", root(&dir)]);
    assert_eq!(code, 1);
    assert!(out.contains("MISMATCH"), "{out}");
    assert!(out.contains("  value S expected=25/26 computed=49/52 MISMATCH\n"), "{out}");
    assert!(err.starts_with("4.13/Rxy: "), "{err}");
}

#[test]
fn report_lists_family_rows() {
    let (code, out, _) = run(&["report", shipped().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("family 4.13\n"));
    assert!(out.contains("surface R_xy Rxy divisorial tau=2 S=49/52 beta=3/52 [beta>0] ok"), "{out}");
    assert!(out.contains("surface E E divisorial tau=2 S=35/52 beta=17/52 [beta>0] ok"), "{out}");
    assert!(out.contains("surface E betaE divisorial tau=3 S=19/10 beta=1/10 [beta>0] ok"), "{out}");
    assert!(out.contains("surface S betaS divisorial tau=3 S=19/20 beta=1/20 [beta>0] ok"), "{out}");
    for family in ["2.22", "3.12", "3.13", "4.13"] {
        let section = out.split(&format!("family {family}\n")).nth(1).unwrap();
        assert!(section.contains("scope complete:"), "{family}");
    }
    assert!(out.contains("family 2.24: settled externally"));
}

#[test]
fn machine_report_is_key_value_lines() {
    let (code, out, _) = run(&["report", shipped().to_str().unwrap(), "--machine"]);
    assert_eq!(code, 0);
    for line in out.lines() {
        let (key, _) = line.split_once('=').unwrap_or_else(|| panic!("not key=value: {line}"));
        assert!(!key.is_empty() && !key.contains(' '), "{line}");
    }
    assert!(out.contains("4.13/Rxy.beta=3/52\n"), "{out}");
    assert!(out.contains("4.13/scope/1.center=surface R_xy\n4.13/scope/1.covered_by=Rxy\n"), "{out}");
}

#[test]
fn oracle_passes_and_is_seed_invariant() {
    let corpus = shipped();
    let (code, out, _) = run(&["oracle", corpus.to_str().unwrap(), "--samples", "25", "--seed", "7"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("0 mismatches (samples=25, seed=7)\n"), "{out}");
    for seed in ["1", "99"] {
        let (code, out, _) = run(&["oracle", corpus.to_str().unwrap(), "--samples", "5", "--seed", seed]);
        assert_eq!(code, 0, "seed {seed}");
        assert!(out.contains(" 0 mismatches"));
    }
}

#[test]
fn oracle_detects_mutated_coefficient() {
    let dir = mutated("2.22/certs/Ctilde.txt", "f1 = \"v-u\"", "f1 = \"v-u+1/3\"");
    let (code, out, err) = run(&["oracle", root(&dir)]);
    assert_eq!(code, 1);
    assert!(out.contains("2.22/Ctilde points=100 degenerate=0 mismatches=25 MISMATCH"), "{out}");
    assert!(err.starts_with("2.22/Ctilde u-chamber 0 v-chamber 1 at (u,v)="), "{err}");
}

#[test]
fn oracle_rejects_zero_samples() {
    let (code, _, _) = run(&["oracle", shipped().to_str().unwrap(), "--samples", "0"]);
    assert_eq!(code, 2);
}

#[test]
fn pfaffian_prints_verdicts() {
    let (code, out, _) = run(&["pfaffian"]);
    assert_eq!(code, 0);
    assert!(out.contains("specialization: all five equations reproduced"));
    assert!(out.contains("a=0,b=1: Pf4 = x1y1z3+x1y3z1+x3y1z1+x3y2z3 OK"));
    assert!(out.contains("relation 2a*Pf5"));
    assert!(out.contains("relation 2a*Pf4"));
}
