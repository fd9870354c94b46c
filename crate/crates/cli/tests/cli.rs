use std::path::Path;
use std::process::{Command, Output};

use c3_qchar::fm::fm_qcharacter;
use c3_qchar::QCharacter;

fn c3q(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_c3q")).args(args).env_remove("C3Q_CACHE_DIR").output().expect("run c3q")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn compute_trivial_module() {
    let o = c3q(&["compute", "T", "0", "0", "0", "--s", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("character: 1\n") || s.ends_with("character: 1\n"), "{s}");
    assert!(s.contains("dimension: 1\n"));
}

#[test]
fn compute_fundamental_and_both_methods() {
    let o = c3q(&["compute", "fundamental", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("terms: 14\n"));
    let o = c3q(&["compute", "T", "1", "0", "1", "--method", "both"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("agree") && s.contains("dimension: 70\n"), "{s}");
}

#[test]
fn json_character_round_trips() {
    let o = c3q(&["--format", "json", "compute", "fundamental", "3", "--s", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let x: QCharacter = serde_json::from_value(v["character"].clone()).unwrap();
    assert_eq!(x, fm_qcharacter(&"3_2".parse().unwrap()).unwrap());
    assert_eq!(v["terms"], 14);
}

#[test]
fn verify_systems() {
    let o = c3q(&["verify", "usual", "--max", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("9/9 instances pass"));
    let o = c3q(&["verify", "IV", "--max", "1", "--s", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn printed_i9_fails_balance() {
    let o = c3q(&["verify", "I", "--max", "1", "--strict-paper"]);
    assert_eq!(o.status.code(), Some(2));
    let s = stdout(&o);
    let i9: Vec<&str> = s.lines().filter(|l| l.starts_with("FAIL I.9")).collect();
    assert!(!i9.is_empty(), "{s}");
    assert!(s.contains("highest-monomial balance FAILS"));
}

#[test]
fn perturbed_instances_exit_with_mismatch() {
    let o = c3q(&["verify", "usual", "--max", "2", "--perturb"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn decompositions() {
    let s = stdout(&c3q(&["decompose", "T", "0", "2", "0"]));
    assert!(s.contains("restriction = V(2w1) + V(2w2) + V(0)"), "{s}");
    assert!(s.contains("prediction matches"));
    let s = stdout(&c3q(&["decompose", "Ttilde", "2", "0", "1"]));
    assert!(s.contains("restriction = V(2w1+w3) + V(w3)"), "{s}");
    let s = stdout(&c3q(&["decompose", "T", "0", "0", "1"]));
    assert!(s.contains("restriction = V(w1)\n"), "{s}");
}

#[test]
fn certificates() {
    for args in [&["certify", "T_k_l_0", "2", "1"][..], &["certify", "Tt_1_0_m", "2"][..]] {
        let o = c3q(args);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).contains("certificate verified"));
    }
    let o = c3q(&["certify", "Tt_1_0_m", "2", "--corrupt"]);
    assert_eq!(o.status.code(), Some(2));
    let s = stdout(&o);
    assert!(s.contains("condition (iv): FAILS") && s.contains("  (iv) "), "{s}");
    let o = c3q(&["--strict-paper", "certify", "T_k_l_0", "2", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(c3q(&["bogus"]).status.code(), Some(1));
    assert_eq!(c3q(&["compute", "X", "1"]).status.code(), Some(1));
    assert_eq!(c3q(&["compute", "T", "1", "0"]).status.code(), Some(1));
    assert_eq!(c3q(&["--max-terms", "0", "compute", "T", "1", "0", "0"]).status.code(), Some(1));
    assert_eq!(c3q(&["--max-terms", "10", "compute", "T", "1", "0", "1"]).status.code(), Some(3));
    assert_eq!(c3q(&["--help"]).status.code(), Some(0));
}

#[test]
fn cache_files_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let run = || c3q(&["--cache-dir", d, "compute", "T", "1", "0", "1", "--s", "3", "--method", "both"]);
    assert_eq!(run().status.code(), Some(0));
    let fm_file = Path::new(d).join("fm/T_k1_l0_m1.json");
    let rec_file = Path::new(d).join("recursion/T_k1_l0_m1.json");
    let first = std::fs::read(&fm_file).unwrap();
    assert_eq!(first, std::fs::read(&rec_file).unwrap());
    let out1 = stdout(&run());
    assert_eq!(std::fs::read(&fm_file).unwrap(), first);
    let out2 = stdout(&run());
    let strip = |s: &str| s.lines().filter(|l| !l.starts_with("time:")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&out1), strip(&out2));

    let env_dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_c3q"))
        .args(["compute", "S", "1", "1"])
        .env("C3Q_CACHE_DIR", env_dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(env_dir.path().join("fm/S_k1_l1.json").exists());
}

#[test]
fn threads_flag_keeps_order() {
    let a = stdout(&c3q(&["--threads", "1", "verify", "III", "--max", "1"]));
    let b = stdout(&c3q(&["--threads", "3", "verify", "III", "--max", "1"]));
    let heads = |s: &str| s.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).map(|l| l.split(" [").next().unwrap().to_string()).collect::<Vec<_>>();
    assert_eq!(heads(&a), heads(&b));
    assert!(!heads(&a).is_empty());
}
