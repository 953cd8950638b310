//! End-to-end tests for the command-line binary: spawn it, parse the JSON
//! it prints, and check exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_graphnorm"));
    c.env_remove("GRAPHNORM_SEED");
    c
}

fn fixture(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not one JSON object ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

const PANTS_PAIR: &str = r#"{"format_version":"1","blocks":[{"id":0,"genus":0,"boundary":3},{"id":1,"genus":0,"boundary":3}],"tori":[{"id":0,"plus":{"block":0,"index":0},"minus":{"block":1,"index":0},"gluing":[[1,0],[1,1]]},{"id":1,"plus":{"block":0,"index":1},"minus":{"block":1,"index":1},"gluing":[[1,0],[1,1]]},{"id":2,"plus":{"block":0,"index":2},"minus":{"block":1,"index":2},"gluing":[[1,0],[1,1]]}]}"#;

/// Same shape but torus 0 carries a fibre coefficient 2, so the glued
/// character equations are obstructed at modulus 3.
const OBSTRUCTED_PAIR: &str = r#"{"format_version":"1","blocks":[{"id":0,"genus":0,"boundary":3},{"id":1,"genus":0,"boundary":3}],"tori":[{"id":0,"plus":{"block":0,"index":0},"minus":{"block":1,"index":0},"gluing":[[2,1],[1,1]]},{"id":1,"plus":{"block":0,"index":1},"minus":{"block":1,"index":1},"gluing":[[1,0],[1,1]]},{"id":2,"plus":{"block":0,"index":2},"minus":{"block":1,"index":2},"gluing":[[1,0],[1,1]]}]}"#;

/// Fibre coefficients 2, 1, 1: modulus 2 shares a factor with torus 0.
const EVEN_PAIR: &str = r#"{"format_version":"1","blocks":[{"id":0,"genus":0,"boundary":3},{"id":1,"genus":0,"boundary":3}],"tori":[{"id":0,"plus":{"block":0,"index":0},"minus":{"block":1,"index":0},"gluing":[[1,0],[2,1]]},{"id":1,"plus":{"block":0,"index":1},"minus":{"block":1,"index":1},"gluing":[[1,0],[1,1]]},{"id":2,"plus":{"block":0,"index":2},"minus":{"block":1,"index":2},"gluing":[[1,0],[1,1]]}]}"#;

#[test]
fn validate_accepts_a_composite_graph() {
    let path = fixture("pants.json", PANTS_PAIR);
    let out = bin().arg("validate").arg(&path).output().unwrap();
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["structure"]["composite"], Value::Bool(true));
    assert_eq!(v["type"]["composite"], Value::Bool(true));
    assert_eq!(v["type"]["reasons"], serde_json::json!([]));

    // --pretty changes formatting, not content
    let pretty = bin()
        .arg("validate")
        .arg(&path)
        .arg("--pretty")
        .output()
        .unwrap();
    assert_eq!(code(&pretty), 0);
    assert_eq!(json_of(&pretty), v);
    assert_ne!(pretty.stdout, out.stdout);
}

#[test]
fn validate_flags_a_zero_intersection_torus() {
    let doc = PANTS_PAIR.replace(r#""gluing":[[1,0],[1,1]]},{"id":1"#, r#""gluing":[[1,0],[0,1]]},{"id":1"#);
    let path = fixture("zero_c.json", &doc);
    let out = bin().arg("validate").arg(&path).output().unwrap();
    assert_eq!(code(&out), 1);
    let v = json_of(&out);
    assert_eq!(v["type"]["composite"], Value::Bool(false));
    assert!(v["type"]["reasons"].as_array().unwrap().iter().any(|r| r == "NOT_REDUCED"));
    assert_eq!(v["structure"]["zero_intersection_tori"], serde_json::json!([0]));
}

#[test]
fn validate_rejects_a_non_unimodular_gluing() {
    let doc = PANTS_PAIR.replace("[[1,0],[1,1]]", "[[2,0],[1,1]]");
    let path = fixture("det2.json", &doc);
    let out = bin().arg("validate").arg(&path).output().unwrap();
    assert_eq!(code(&out), 2);
    let v = json_of(&out);
    assert_eq!(v["error"]["code"], "SCHEMA_ERROR");
    let message = v["error"]["message"].as_str().unwrap();
    assert!(message.contains("gluing not unimodular"), "{message}");
}

#[test]
fn validate_reports_parse_position() {
    let truncated = &PANTS_PAIR[..PANTS_PAIR.len() - 20];
    let path = fixture("truncated.json", truncated);
    let out = bin().arg("validate").arg(&path).output().unwrap();
    assert_eq!(code(&out), 2);
    let v = json_of(&out);
    assert_eq!(v["error"]["code"], "PARSE_ERROR");
    assert!(v["error"]["line"].as_u64().is_some());
    assert!(v["error"]["column"].as_u64().is_some());
}

#[test]
fn missing_file_is_an_io_error() {
    let out = bin().arg("validate").arg("/nonexistent/graph.json").output().unwrap();
    assert_eq!(code(&out), 2);
    assert_eq!(json_of(&out)["error"]["code"], "IO_ERROR");
}

#[test]
fn invariants_check_the_norm_identity() {
    let path = fixture("pants_inv.json", PANTS_PAIR);
    let out = bin()
        .args(["invariants", path.to_str().unwrap(), "--sigma", "fibres=1,1", "--d", "3"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["h1"]["b1"], 3);
    assert_eq!(v["h1"]["invariant_factors"], serde_json::json!([3]));
    assert_eq!(v["norms"]["thurston"], 2);
    assert_eq!(v["norms"]["torsion_width"], 2);
    assert_eq!(v["norms"]["equal"], Value::Bool(true));
    assert_eq!(v["norms"]["acyclic"], Value::Bool(true));
    assert_eq!(v["alpha"]["source"], "glued");
    assert_eq!(v["alpha"]["validated"], Value::Bool(true));
    assert_eq!(v["alpha"]["modulus"], 3);
}

#[test]
fn invariants_defaults_to_the_smallest_modulus() {
    let path = fixture("pants_di.json", PANTS_PAIR);
    let defaulted = bin()
        .args(["invariants", path.to_str().unwrap(), "--sigma", "fibres=1,1"])
        .output()
        .unwrap();
    assert_eq!(code(&defaulted), 0);
    assert_eq!(json_of(&defaulted)["alpha"]["modulus"], 2);
}

#[test]
fn invariants_reject_a_shared_factor_modulus() {
    let path = fixture("even_pair.json", EVEN_PAIR);
    let out = bin()
        .args(["invariants", path.to_str().unwrap(), "--sigma", "fibres=1,1", "--d", "2"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
    let v = json_of(&out);
    assert_eq!(v["error"]["code"], "NOT_COPRIME");
    assert_eq!(v["error"]["torus"], 0);
    assert_eq!(v["error"]["c"], 2);
    assert_eq!(v["error"]["modulus"], 2);
    assert_eq!(v["error"]["suggested_modulus"], 3);
}

#[test]
fn invariants_fall_back_when_gluing_is_obstructed() {
    let path = fixture("obstructed.json", OBSTRUCTED_PAIR);
    let out = bin()
        .args(["invariants", path.to_str().unwrap(), "--sigma", "fibres=1,1", "--d", "3"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["alpha"]["source"], "fibre_fallback");
    assert_eq!(v["alpha"]["validated"], Value::Bool(false));
    let blocks = v["alpha"]["obstruction"]["blocks"].as_array().unwrap();
    assert!(!blocks.is_empty());
    assert_eq!(blocks[0]["block"], 0);
    assert_eq!(blocks[0]["residue"], 2);
    assert_eq!(blocks[0]["cover_order"], "9");
    // the norm identity is about fibre values, so it still holds
    assert_eq!(v["norms"]["equal"], Value::Bool(true));
}

#[test]
fn invariants_accept_a_consistent_class() {
    let path = fixture("pants_cls.json", PANTS_PAIR);
    // the zero functional satisfies every gluing relation
    let out = bin()
        .args(["invariants", path.to_str().unwrap(), "--sigma", "class=0,0,0,0,0,0,0,0", "--d", "3"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["sigma"]["kind"], "class");
    assert_eq!(v["sigma"]["validated"], Value::Bool(true));
    assert_eq!(v["norms"]["thurston"], 0);
}

#[test]
fn invariants_reject_an_inconsistent_class() {
    let path = fixture("pants_bad_cls.json", PANTS_PAIR);
    let out = bin()
        .args(["invariants", path.to_str().unwrap(), "--sigma", "class=1,0,0,0,0,0,0,0", "--d", "3"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
    assert_eq!(json_of(&out)["error"]["code"], "VALIDATION_ERROR");
}

#[test]
fn invariants_reject_malformed_sigma_syntax() {
    let path = fixture("pants_syn.json", PANTS_PAIR);
    for bad in ["1,1", "fibers=1,1", "fibres=1,x"] {
        let out = bin()
            .args(["invariants", path.to_str().unwrap(), "--sigma", bad])
            .output()
            .unwrap();
        assert_eq!(code(&out), 2, "sigma {bad:?}");
        assert_eq!(json_of(&out)["error"]["code"], "USAGE_ERROR", "sigma {bad:?}");
    }
}

#[test]
fn invariants_require_a_composite_graph() {
    let doc = PANTS_PAIR.replace(r#""gluing":[[1,0],[1,1]]},{"id":1"#, r#""gluing":[[1,0],[0,1]]},{"id":1"#);
    let path = fixture("zero_c_inv.json", &doc);
    let out = bin()
        .args(["invariants", path.to_str().unwrap(), "--sigma", "fibres=1,1"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
    let v = json_of(&out);
    assert_eq!(v["error"]["code"], "NOT_COMPOSITE");
    assert!(!v["error"]["reasons"].as_array().unwrap().is_empty());
}

#[test]
fn bundle_reports_the_transfer_bound() {
    let path = fixture("pants_bdl.json", PANTS_PAIR);
    let out = bin()
        .args([
            "bundle",
            path.to_str().unwrap(),
            "--sigma",
            "fibres=1,1",
            "--self-intersection",
            "-4",
        ])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["bound_rhs"], 6);
    assert_eq!(v["pushforward_norm"], 2);
    assert_eq!(v["self_intersection"], -4);
    assert_eq!(v["sw_gate_b1"], Value::Bool(true));
    assert_eq!(v["b1"], 3);
}

#[test]
fn bundle_separates_cancelling_support() {
    let graph = fixture("pants_sw.json", PANTS_PAIR);
    let sw = fixture(
        "sw_cancel.json",
        r#"{"free_rank":2,"torsion":[],"support":[{"free":[0,0],"torsion":[],"value":1},{"free":[1,0],"torsion":[],"value":-1}]}"#,
    );
    let out = bin()
        .args([
            "bundle",
            graph.to_str().unwrap(),
            "--sigma",
            "fibres=1,1",
            "--self-intersection",
            "-4",
            "--sw",
            sw.to_str().unwrap(),
            "--euler",
            "1,0",
            "--gamma",
            "0,1",
        ])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    let sums = v["baldridge"]["sums"].as_array().unwrap();
    assert_eq!(sums.len(), 2);
    assert!(sums.iter().all(|s| s["sum"] == 0));
    assert_eq!(v["separation"]["k"], 1);
    assert_eq!(v["separation"]["twisted_euler"]["free"], serde_json::json!([1, 1]));
    let restored: Vec<i64> = v["separation"]["restored"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["sum"].as_i64().unwrap())
        .collect();
    assert_eq!(restored, vec![1, -1]);
    assert_eq!(v["limit_certificate"]["verdict"], "CERTIFIED");
}

#[test]
fn bundle_rejects_a_torsion_loop() {
    let graph = fixture("pants_tl.json", PANTS_PAIR);
    let sw = fixture(
        "sw_torsion.json",
        r#"{"free_rank":1,"torsion":[2],"support":[{"free":[1],"torsion":[0],"value":1}]}"#,
    );
    let out = bin()
        .args([
            "bundle",
            graph.to_str().unwrap(),
            "--sigma",
            "fibres=1,1",
            "--self-intersection",
            "0",
            "--sw",
            sw.to_str().unwrap(),
            "--euler",
            "1;0",
            "--gamma",
            "0;1",
        ])
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
    assert_eq!(json_of(&out)["error"]["code"], "TORSION_LOOP");
}

#[test]
fn bundle_refutes_an_undersized_candidate() {
    let path = fixture("pants_ref.json", PANTS_PAIR);
    let out = bin()
        .args([
            "bundle",
            path.to_str().unwrap(),
            "--sigma",
            "fibres=1,1",
            "--self-intersection",
            "-4",
            "--sw",
            fixture(
                "sw_one.json",
                r#"{"free_rank":1,"torsion":[],"support":[{"free":[1],"torsion":[],"value":1}]}"#,
            )
            .to_str()
            .unwrap(),
            "--euler",
            "1",
            "--gamma",
            "2",
            "--chi-candidate",
            "5",
            "--m",
            "3",
        ])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["limit_certificate"]["verdict"], "REFUTED");
    assert_eq!(v["limit_certificate"]["witness_k"], 4);
    assert_eq!(v["limit_certificate"]["trace"].as_array().unwrap().len(), 4);
}

#[test]
fn corpus_is_deterministic_and_composite() {
    let a = bin().args(["corpus", "--blocks", "3", "--seed", "7", "--count", "5"]).output().unwrap();
    let b = bin().args(["corpus", "--blocks", "3", "--seed", "7", "--count", "5"]).output().unwrap();
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    for line in &lines {
        let g = graphnorm::document::parse_graph(line).unwrap();
        assert!(g.classify().composite);
        // printing the parsed document reproduces the line byte for byte
        let doc = graphnorm::document::parse_document(line).unwrap();
        assert_eq!(&doc.to_json(false), line);
        assert_eq!(g.blocks().len(), 3);
    }

    let other = bin().args(["corpus", "--blocks", "3", "--seed", "8", "--count", "5"]).output().unwrap();
    assert_ne!(b.stdout, other.stdout);
}

#[test]
fn corpus_env_seed_overrides_the_flag() {
    let via_env = bin()
        .args(["corpus", "--blocks", "2", "--seed", "0", "--count", "3"])
        .env("GRAPHNORM_SEED", "41")
        .output()
        .unwrap();
    let via_flag = bin()
        .args(["corpus", "--blocks", "2", "--seed", "41", "--count", "3"])
        .output()
        .unwrap();
    assert_eq!(code(&via_env), 0);
    assert_eq!(via_env.stdout, via_flag.stdout);

    let bad_env = bin()
        .args(["corpus", "--blocks", "2"])
        .env("GRAPHNORM_SEED", "many")
        .output()
        .unwrap();
    assert_eq!(code(&bad_env), 2);
    assert_eq!(json_of(&bad_env)["error"]["code"], "USAGE_ERROR");
}

#[test]
fn corpus_requires_at_least_two_blocks() {
    let out = bin().args(["corpus", "--blocks", "1"]).output().unwrap();
    assert_eq!(code(&out), 2);
    assert_eq!(json_of(&out)["error"]["code"], "USAGE_ERROR");
}

#[test]
fn unknown_flags_exit_two() {
    let out = bin().args(["validate", "--frobnicate"]).output().unwrap();
    assert_eq!(code(&out), 2);
}
