use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn polycell(work: &Path, group: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polycell"))
        .arg("--group")
        .arg(config(group))
        .arg("--workspace")
        .arg(work)
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

fn meta(work: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(work.join("W237/meta.json")).unwrap()).unwrap()
}

#[test]
fn group_info_w237() {
    let dir = tempfile::tempdir().unwrap();
    let out = polycell(dir.path(), "w237.json", &["group", "info"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["exponents"], serde_json::json!([2, 3, 7]));
    assert_eq!(v["predicted_two_sided_cells"], 5);
}

#[test]
fn group_info_w2224() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&polycell(dir.path(), "w2224.json", &["group", "info"]));
    assert_eq!(v["exponents"], serde_json::json!([2, 4]));
    let longest: Vec<&str> = v["dihedral"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["longest"].as_str().unwrap())
        .collect();
    assert!(longest.contains(&"adad"));
}

#[test]
fn verify_passes_and_warm_cache_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "all", "--radius", "9"];
    let first = polycell(dir.path(), "w237.json", &args);
    assert_eq!(
        first.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&first.stderr)
    );
    assert_eq!(json(&first)["passed"], true);
    let meta_before = meta(dir.path());
    let second = polycell(dir.path(), "w237.json", &args);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(meta_before, meta(dir.path()));
}

#[test]
fn corrupt_cache_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    assert!(polycell(dir.path(), "w237.json", &["fsa", "build"])
        .status
        .success());
    fs::write(dir.path().join("W237/fsa/C2.fsa"), "not an automaton").unwrap();
    let out = polycell(
        dir.path(),
        "w237.json",
        &["cells", "conjectural", "--radius", "6"],
    );
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(
        out.stderr
            .trim_ascii_end()
            .split(|&b| b == b'\n')
            .next_back()
            .unwrap(),
    )
    .unwrap();
    assert_eq!(err["kind"], "corrupt_cache");
}

#[test]
fn planted_label_swap_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    assert!(polycell(dir.path(), "w237.json", &["fsa", "build"])
        .status
        .success());
    let fsa = dir.path().join("W237/fsa");
    let c2 = fs::read(fsa.join("C2.fsa")).unwrap();
    let c3 = fs::read(fsa.join("C3.fsa")).unwrap();
    fs::write(fsa.join("C2.fsa"), &c3).unwrap();
    fs::write(fsa.join("C3.fsa"), &c2).unwrap();
    // Re-stamp so the swap looks like a legitimate cache entry.
    let mut m = meta(dir.path());
    m["artifacts"]["fsa/C2.fsa"]["sha256"] = hex::encode(Sha256::digest(&c3)).into();
    m["artifacts"]["fsa/C3.fsa"]["sha256"] = hex::encode(Sha256::digest(&c2)).into();
    fs::write(
        dir.path().join("W237/meta.json"),
        serde_json::to_string_pretty(&m).unwrap(),
    )
    .unwrap();

    let out = polycell(
        dir.path(),
        "w237.json",
        &["verify", "oracles", "--radius", "8"],
    );
    assert_eq!(
        out.status.code(),
        Some(1),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["passed"], false);
    assert!(!v["oracles"]["fsa_disagreements"]
        .as_array()
        .unwrap()
        .is_empty());
}

#[test]
fn render_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for out in [&a, &b] {
        let o = polycell(
            dir.path(),
            "w237.json",
            &["render", "--radius", "8", "--out", out.to_str().unwrap()],
        );
        assert!(o.status.success());
    }
    let svg = fs::read(&a).unwrap();
    assert_eq!(svg, fs::read(&b).unwrap());
    let text = String::from_utf8(svg).unwrap();
    assert!(text.starts_with("<svg") || text.starts_with("<?xml"));
    for fill in ["#ffffff", "#f5d300", "#2f6fdf", "#2ea043", "#d1242f"] {
        assert!(text.contains(fill), "missing {fill}");
    }
}

#[test]
fn onesided_level_3_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = polycell(
        dir.path(),
        "w237.json",
        &["onesided", "--level", "3", "--radius", "10"],
    );
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["exponent"], 7);
    assert_eq!(v["coverage"]["contained"], true);
    assert_eq!(v["nested_or_disjoint"], true);
    assert_eq!(v["minimal"][0]["translator"], "");
}

#[test]
fn fixed_k_and_bad_level() {
    let dir = tempfile::tempdir().unwrap();
    let out = polycell(
        dir.path(),
        "w237.json",
        &["--k", "6", "cells", "conjectural", "--radius", "6"],
    );
    assert!(out.status.success());
    assert_eq!(json(&out)["k"], 6);
    let out = polycell(dir.path(), "w237.json", &["onesided", "--level", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fsa_equiv_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    assert!(polycell(dir.path(), "w237.json", &["fsa", "build"])
        .status
        .success());
    let same = polycell(dir.path(), "w237.json", &["fsa", "equiv", "C1", "C1"]);
    assert_eq!(same.status.code(), Some(0));
    let differ = polycell(dir.path(), "w237.json", &["fsa", "equiv", "C1", "C2"]);
    assert_eq!(differ.status.code(), Some(1));
    let stats = json(&polycell(
        dir.path(),
        "w237.json",
        &["fsa", "stats", "C_id", "--radius", "3"],
    ));
    assert_eq!(stats["counts"], serde_json::json!(["1", "0", "0", "0"]));
}
