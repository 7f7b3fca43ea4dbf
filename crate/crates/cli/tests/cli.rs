use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn k3frob(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3frob")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", "lattices", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn strip_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn family_a_ten_members() {
    let out = k3frob(&["k3", "family-a", "--count", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "pass");
    let pairs = v["result"]["per_pair"].as_array().unwrap();
    assert_eq!(pairs.len(), 45);
}

#[test]
fn hyperbolic_plane_twist_by_seven() {
    let out = k3frob(&["qf", "equiv", "--left", &data("U.json"), "--right", &data("U-twist-7.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["equivalent"], true);
}

#[test]
fn inequivalent_forms_exit_one() {
    let out = k3frob(&["qf", "equiv", "--left", "U", "--right", "[[1,0],[0,1]]"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verdict"], "fail");
}

#[test]
fn invariant_dimension_two_points() {
    let out = k3frob(&["orb", "invariant-dim", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["total"], "324");
    assert_eq!(v["result"]["oracle_match"], true);
    assert_eq!(v["result"]["by_degree"]["4"], "276");
}

#[test]
fn malformed_json_reports_position() {
    let out = k3frob(&["qf", "invariants", "--input", "{\"gram\": [[1,0],[0 1]]}"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1 column 20"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn missing_file_and_domain_errors_exit_two() {
    assert_eq!(k3frob(&["qf", "invariants", "--input", "/nonexistent/form.json"]).status.code(), Some(2));
    assert_eq!(k3frob(&["frob", "cy", "--d", "2", "--s", "1"]).status.code(), Some(2));
    assert_eq!(k3frob(&["orb", "defect", "--n", "3", "--g", "(1 4)", "--h", "()"]).status.code(), Some(2));
}

#[test]
fn usage_error_exits_two() {
    assert_eq!(k3frob(&["k3", "no-such-command"]).status.code(), Some(2));
    assert_eq!(k3frob(&[]).status.code(), Some(2));
}

#[test]
fn seeded_runs_are_identical() {
    for args in [
        ["frob", "classify", "--count", "30", "--seed", "7"].as_slice(),
        ["orb", "associativity", "--n", "2", "--count", "20", "--seed", "7"].as_slice(),
    ] {
        let a = k3frob(args);
        let b = k3frob(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(strip_timing(json(&a)), strip_timing(json(&b)));
        assert_eq!(json(&a)["seed"], 7);
    }
}

#[test]
fn odd_model_breaks_small_diagonal() {
    assert_eq!(k3frob(&["frob", "bv"]).status.code(), Some(0));
    assert_eq!(k3frob(&["frob", "bv", "--model", "odd"]).status.code(), Some(1));
}

#[test]
fn text_format() {
    let out = k3frob(&["--format", "text", "orb", "epsilon", "--n", "3", "--g", "(1 2)", "--h", "(2 3)"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.lines().any(|l| l.starts_with("epsilon(")), "{s}");
    assert!(s.lines().any(|l| l.starts_with("seed: ")));
}

#[test]
fn catalog_files_match_library() {
    for name in k3_frobenius::k3::CATALOG_NAMES {
        let out = k3frob(&["qf", "equiv", "--left", name, "--right", &data(&format!("{name}.json"))]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let text = std::fs::read_to_string(data(&format!("{name}.json"))).unwrap();
        let file: Value = serde_json::from_str(&text).unwrap();
        let lib = k3_frobenius::k3::catalog(name).unwrap();
        assert_eq!(file["gram"], serde_json::to_value(lib.gram()).unwrap(), "{name}");
    }
}

#[test]
fn every_subcommand_runs() {
    let cases: &[&[&str]] = &[
        &["qf", "invariants", "--input", "E8_minus"],
        &["qf", "twist", "--input", "U", "--m", "7"],
        &["qf", "lemma-class", "--input", "U"],
        &["k3", "family-b", "--count", "4"],
        &["k3", "lem-el", "--count", "3"],
        &["k3", "fermat", "--count", "3"],
        &["k3", "scale-check", "--m", "1"],
        &["k3", "catalog", "--name", "FermatT"],
        &["frob", "axioms", "--mutations"],
        &["frob", "assemble"],
        &["frob", "abelian", "--g", "2", "--lambda", "1"],
        &["frob", "cy", "--d", "3", "--s", "8", "--frobenius"],
        &["orb", "defect", "--n", "3", "--g", "(1 2)", "--h", "(2 3)"],
        &["orb", "star", "--n", "2", "--input", r#"{"x":{"sector":[2,1],"terms":[[[0],"1"]]},"y":{"sector":[1,2],"terms":[[[0,0],"1"]]}}"#],
        &["orb", "oracle", "--n", "3"],
    ];
    for args in cases {
        let out = k3frob(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let v = json(&out);
        assert_eq!(v["command"], format!("{} {}", args[0], args[1]));
        assert!(v["version"].is_string());
    }
}
