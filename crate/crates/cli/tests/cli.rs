use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

use bruhat_dt::weyl::{greedy_pair_word, move_closure, Permutation};
use rayon::prelude::*;
use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bruhat-dt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = bin(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn schema(name: &str) -> jsonschema::Validator {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "docs", "schema", "v1", name]
        .iter()
        .collect();
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).expect("schema compiles")
}

fn assert_valid(v: &jsonschema::Validator, value: &Value, what: &str) {
    let errors: Vec<String> = v.iter_errors(value).map(|e| format!("{e} at {}", e.instance_path)).collect();
    assert!(errors.is_empty(), "{what}: {errors:?}");
}

fn letters_arg(letters: &[i32]) -> String {
    letters.iter().map(i32::to_string).collect::<Vec<_>>().join(",")
}

fn s3_corpus() -> Vec<Vec<i32>> {
    let mut out = BTreeSet::new();
    for u in Permutation::all(3) {
        for v in Permutation::all(3) {
            for (w, _) in move_closure(&greedy_pair_word(&u, &v).unwrap()) {
                out.insert(w.letters().to_vec());
            }
        }
    }
    out.into_iter().collect()
}

#[test]
fn greedy_word_of_longest_pair() {
    let v = json(&["word", "greedy", "--n", "3", "--u", "321", "--v", "321"]);
    assert_eq!(v["letters"], serde_json::json!([-1, -2, -1, 1, 2, 1]));
}

#[test]
fn greedy_word_of_identity_pair_is_empty() {
    let v = json(&["word", "greedy", "--n", "2", "--u", "12", "--v", "12"]);
    assert_eq!(v["letters"], serde_json::json!([]));
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["word", "validate", "--n", "2", "--letters", "1,1"]).status.code(), Some(3));
    assert_eq!(bin(&["word", "validate", "--n", "2", "--letters", "1,a"]).status.code(), Some(2));
    assert_eq!(bin(&["word", "validate", "--n", "2", "--letters", "2"]).status.code(), Some(2));
    assert_eq!(bin(&["word", "greedy", "--n", "3", "--u", "12", "--v", "12"]).status.code(), Some(2));
    assert_eq!(bin(&["graph", "--n", "2"]).status.code(), Some(2));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bin(&["word", "validate", "--n", "3", "--letters", "-1,2,1"]).status.code(), Some(0));
}

#[test]
fn boundary_removed_quiver() {
    let v = json(&["quiver", "--letters", "1,-2,2,1,-1,-2", "--n", "3", "--boundary-removed"]);
    assert_eq!(v["vertices"], serde_json::json!([2, 3, 6, 7]));
    assert_eq!(
        v["arrows"],
        serde_json::json!([[2, 7, 1], [3, 2, 1], [6, 2, 1], [7, 3, 1], [7, 6, 1]])
    );
}

#[test]
fn empty_word_graph_has_three_faces() {
    let v = json(&["graph", "--letters", "", "--n", "2"]);
    assert_eq!(v["faces"].as_array().unwrap().len(), 3);
}

#[test]
fn dot_output_parses() {
    for cmd in ["graph", "quiver"] {
        let out = bin(&[cmd, "--letters", "-1,-2,-1,1,2,1", "--n", "3", "--format", "dot"]);
        assert!(out.status.success());
        let text = String::from_utf8(out.stdout).unwrap();
        graphviz_rust::parse(&text).unwrap_or_else(|e| panic!("{cmd}: {e}\n{text}"));
    }
}

#[test]
fn dt_check_gl2() {
    let out = bin(&["dt", "check", "--letters", "-1,1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["degree_matrix"]["entries"], serde_json::json!([[-1]]));
}

#[test]
fn dt_check_gl3_longest_pair() {
    let v = json(&["dt", "check", "--letters", "-1,-2,-1,1,2,1", "--n", "3"]);
    let minus_identity: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| -i64::from(i == j)).collect()).collect();
    assert_eq!(v["degree_matrix"]["entries"], serde_json::json!(minus_identity));
    for check in ["lgv", "positivity", "involution", "plan_match", "trop_delta"] {
        assert_eq!(v["checks"][check]["pass"], Value::Bool(true), "{check}");
    }
    assert_eq!(v["rng_seed"].as_u64(), Some(20240917));
}

#[test]
fn dt_check_selected_checks_only() {
    let v = json(&["dt", "check", "--n", "2", "--letters", "-1,1", "--checks", "trop-delta", "--seed", "5"]);
    assert_eq!(v["checks"].as_object().unwrap().len(), 1);
    assert_eq!(v["rng_seed"].as_u64(), Some(5));
}

#[test]
fn dt_sequence_gl2() {
    let v = json(&["dt", "sequence", "--letters", "-1,1", "--n", "2"]);
    let steps = v["plan"]["plan"]["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 2);
    assert_eq!(steps[0], serde_json::json!({ "mutate": 2 }));
    assert!(steps[1].get("iso").is_some());
    assert_eq!(v["verified"], Value::Bool(true));
}

#[test]
fn closed_form_agrees_with_pipeline() {
    let v = json(&["dt", "closed-form", "--n", "3", "--u", "321", "--v", "321"]);
    assert_eq!(v["h_equivalent"], Value::Bool(true));
}

#[test]
fn moves_path_between_braid_words() {
    let v = json(&["word", "moves", "--n", "3", "--letters", "1,2,1", "--to", "2,1,2"]);
    assert_eq!(v["path"].as_array().unwrap().len(), 1);
}

#[test]
fn all_pairs_batch() {
    let v = json(&["dt", "check", "--n", "3", "--all-pairs"]);
    assert_eq!(v.as_array().unwrap().len(), 36);
    assert_valid(&schema("dt_report.schema.json"), &v, "all pairs");
}

#[test]
fn outputs_match_schemas_on_s3_corpus() {
    let graph = schema("graph.schema.json");
    let quiver = schema("quiver.schema.json");
    let amalgamate = schema("amalgamate.schema.json");
    let minors = schema("minors.schema.json");
    let word = schema("word.schema.json");
    let moves = schema("moves.schema.json");
    let report = schema("dt_report.schema.json");
    let sequence = schema("dt_sequence.schema.json");
    let closed = schema("closed_form.schema.json");
    let corpus = s3_corpus();
    assert!(corpus.len() >= 36);
    corpus.par_iter().for_each(|w| {
        let l = letters_arg(w);
        let base = ["--n", "3", "--letters", l.as_str()];
        let run = |cmd: &[&str]| json(&[cmd, &base[..]].concat());
        assert_valid(&word, &run(&["word", "validate"]), &l);
        assert_valid(&moves, &run(&["word", "moves"]), &l);
        assert_valid(&graph, &run(&["graph"]), &l);
        assert_valid(&quiver, &run(&["quiver"]), &l);
        assert_valid(&quiver, &run(&["quiver", "--boundary-removed"]), &l);
        assert_valid(&amalgamate, &run(&["amalgamate"]), &l);
        assert_valid(&minors, &run(&["minors"]), &l);
        assert_valid(&report, &run(&["dt", "check", "--specializations", "1"]), &l);
        assert_valid(&sequence, &run(&["dt", "sequence", "--specializations", "1"]), &l);
        assert_valid(&closed, &run(&["dt", "closed-form"]), &l);
    });
}

#[test]
fn exit_code_follows_report() {
    for w in s3_corpus().iter().step_by(17) {
        let l = letters_arg(w);
        let out = bin(&["dt", "check", "--n", "3", "--letters", &l, "--specializations", "1"]);
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        let passed = v["checks"].as_object().unwrap().values().all(|c| c["pass"] == Value::Bool(true));
        assert_eq!(out.status.code(), Some(if passed { 0 } else { 4 }), "{l}");
    }
}
