use std::fs;
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_monodromy"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 output"),
    )
}

#[test]
fn image_check_exit_zero_with_order() {
    let (code, out) = run(&["verify", "-p", "5", "-l", "3", "-k", "1,1,1,1", "--checks", "image", "--no-timings"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let rec = &v["records"][0];
    assert_eq!(rec["name"], "image");
    assert_eq!(rec["match"], true);
    assert_eq!(rec["computed"]["order"], "1134000");
    assert_eq!(rec["expected"]["value"]["order"], "1134000");
    for key in ["name", "parameters", "expected", "computed", "match", "runtime_ms", "findings"] {
        assert!(rec.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn invalid_parameters_exit_two() {
    let (code, _) = run(&["verify", "-p", "9", "-l", "3", "-k", "1,1,1"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["verify", "-p", "5", "-l", "3", "-k", "1,0,1"]);
    assert_eq!(code, 2);
}

#[test]
fn empty_check_list_is_empty_report() {
    let (code, out) = run(&["verify", "-p", "5", "-l", "3", "-k", "1,1,1", "--checks", ""]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), 0);
}

#[test]
fn same_seed_same_bytes() {
    let args = ["verify", "-p", "11", "-l", "5", "-k", "1,2,3,1", "--checks", "all", "--seed", "17", "--no-timings"];
    let (a_code, a) = run(&args);
    let (_, b) = run(&args);
    assert_eq!(a, b);
    assert_eq!(a_code, 0);
}

#[test]
fn flags_override_config_file() {
    let dir = std::env::temp_dir().join(format!("monodromy-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.cfg");
    let out = dir.join("out.tsv");
    fs::write(&cfg, "p=5\nl=3\nk=1,1,1,1\nchecks=form\nformat=json\ntimings=false\n").unwrap();
    let status = bin()
        .args(["verify", "--config", cfg.to_str().unwrap(), "--checks", "splitting,form", "--format", "tsv", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("name\tparameters"));
    assert!(lines[1].starts_with("splitting\t"));
    assert!(lines[2].starts_with("form\t"));
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn analyze_and_matrices() {
    let (code, out) = run(&["analyze", "-p", "5", "-l", "3"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["splitting"]["case"], "unitary");
    assert_eq!(v["algebra"]["modulus"], serde_json::json!([1, 1, 1]));

    let (code, out) = run(&["matrices", "-p", "5", "-l", "3", "-k", "1,1,1", "--word", "0 0"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["generators"].as_array().unwrap().len(), 2);
    assert_eq!(v["pure_generators"].as_array().unwrap().len(), 3);
    assert_eq!(v["word"]["pure"], true);
    assert_eq!(v["form"]["rank"], 1);
}

#[test]
fn scan_splitting_only() {
    let (code, out) = run(&["scan", "--p-max", "19", "--l-max", "19", "--n-max", "4", "--checks", "splitting", "--no-timings", "--format", "tsv"]);
    assert_eq!(code, 0);
    // header plus one line per ordered pair of distinct odd primes below 20
    assert_eq!(out.lines().count(), 1 + 7 * 6);
    assert!(out.lines().skip(1).all(|l| l.split('\t').nth(5) == Some("true")));
}
