use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn shellbound(dir: &Path, args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_shellbound"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn report(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn octahedron_bound_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = shellbound(dir.path(), &["gen", "cross-polytope", "--d", "2", "--out", "oct.json"]);
    assert_eq!(code, 0);
    let (code, out, _) = shellbound(dir.path(), &["bounds", "--input", "oct.json", "--k", "1"]);
    assert_eq!(code, 0);
    let r = report(&out);
    assert_eq!(r["check"], "lower-bound");
    assert_eq!(r["tool"], "shellbound");
    assert_eq!(r["input"]["sha256"].as_str().unwrap().len(), 64);
    let b = &r["result"]["reports"][0];
    assert_eq!((b["lhs"].as_u64(), b["rhs_num"].as_i64(), b["rhs_den"].as_i64()), (Some(12), Some(12), Some(1)));
    assert_eq!(b["equality"], true);
    assert_eq!(b["expected_equality"], true);
    assert_eq!(b["per_facet"].as_array().unwrap().len(), 8);
}

#[test]
fn square_shelling_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    shellbound(dir.path(), &["gen", "ngon", "--n", "4", "--out", "square.json"]);
    let (code, out, _) = shellbound(dir.path(), &["check-shelling", "--input", "square.json", "--order", "e12,e34,e23,e41"]);
    assert_eq!(code, 1);
    let r = report(&out);
    assert_eq!(r["result"]["failure"]["step"], 2);
    assert_eq!(r["result"]["failure"]["reason"], "EmptyIntersection");

    let (code, out, _) = shellbound(dir.path(), &["check-shelling", "--input", "square.json", "--order", "e12,e23,e34,e41"]);
    assert_eq!(code, 0);
    assert_eq!(report(&out)["result"]["topology"], "Sphere");

    let (code, out, _) = shellbound(
        dir.path(),
        &["witness", "--input", "square.json", "--order", "e12,e23,e34,e41", "--split", "2"],
    );
    assert_eq!(code, 0);
    let pair = &report(&out)["result"]["pairs"][0];
    assert_eq!((pair["c"].as_str(), pair["d"].as_str()), (Some("v2"), Some("e34")));
}

#[test]
fn reports_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    shellbound(dir.path(), &["gen", "hypercube-boundary", "--d", "3", "--out", "cube.json"]);
    let runs: Vec<String> = (0..3)
        .map(|_| shellbound(dir.path(), &["bounds", "--input", "cube.json"]).1)
        .collect();
    assert!(runs.iter().all(|r| r == &runs[0]));
    let tsv = shellbound(dir.path(), &["bounds", "--input", "cube.json", "--format", "tsv"]).1;
    assert!(tsv.starts_with("field\tvalue\n"));
    assert!(tsv.contains("check\tlower-bound\n"));
}

#[test]
fn facet_list_input_and_output() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = shellbound(dir.path(), &["gen", "cyclic-boundary", "--d", "4", "--n", "6", "--format", "facets"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 9);
    std::fs::write(dir.path().join("c46.txt"), &out).unwrap();
    let (code, out, _) = shellbound(dir.path(), &["find-shelling", "--input", "c46.txt"]);
    assert_eq!(code, 0);
    assert_eq!(report(&out)["result"]["order"].as_array().unwrap().len(), 9);
    let (code, out, _) = shellbound(dir.path(), &["gubt", "--input", "c46.txt", "--n", "6"]);
    assert_eq!(code, 0);
    assert_eq!(report(&out)["result"]["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn punctured_ball_and_corollaries() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = shellbound(
        dir.path(),
        &["gen", "punctured", "--base", "cross-polytope", "--d", "2", "--out", "ball.json"],
    );
    assert_eq!(code, 0);
    let (code, out, _) = shellbound(dir.path(), &["bounds", "--input", "ball.json"]);
    assert_eq!(code, 0, "{out}");
    let (code, _, err) = shellbound(dir.path(), &["corollaries", "--input", "ball.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("diamond"));

    shellbound(dir.path(), &["gen", "simplex-boundary", "--d", "3", "--out", "s.json"]);
    let (code, out, _) = shellbound(dir.path(), &["corollaries", "--input", "s.json"]);
    assert_eq!(code, 0);
    let r = report(&out);
    assert_eq!(r["result"]["min_bound_all_k"], true);
    assert_eq!(r["check"], "corollary-bounds");
}

#[test]
fn exit_codes_for_errors_and_budget() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(shellbound(dir.path(), &["bounds", "--input", "missing.json"]).0, 2);
    assert_eq!(shellbound(dir.path(), &["frobnicate"]).0, 2);
    std::fs::write(dir.path().join("bad.json"), "{\"dim\": 1").unwrap();
    assert_eq!(shellbound(dir.path(), &["find-shelling", "--input", "bad.json"]).0, 2);

    shellbound(dir.path(), &["gen", "cross-polytope", "--d", "3", "--out", "c.json"]);
    let (code, _, err) = shellbound(dir.path(), &["find-shelling", "--input", "c.json", "--budget", "2"]);
    assert_eq!(code, 3, "{err}");
    assert!(err.contains("budget"));

    let (code, _, _) = shellbound(dir.path(), &["check-shelling", "--input", "c.json", "--order", "1234"]);
    assert_eq!(code, 2);
}
