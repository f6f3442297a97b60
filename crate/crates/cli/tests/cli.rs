use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn pqx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pqx"))
        .args(args)
        .output()
        .expect("run pqx")
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn assert_schema_valid(doc: &Value) {
    let schema: Value = serde_json::from_str(pq_cli::OUTPUT_SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}\n{doc:#}");
}

/// Compares against `tests/golden/<name>.json`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, args: &[&str], code: i32) {
    let o = pqx(args);
    assert_eq!(o.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    assert_schema_valid(&json_of(&o));
    let path: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &o.stdout).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {path:?}"));
    assert_eq!(stdout(&o), expected, "output of {args:?} differs from {name}.json");
}

#[test]
fn check_exit_codes() {
    let star = data("star.hg");
    let o = pqx(&["check", &star, "--p", "3", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));

    let m3 = data("matching3.hg");
    let o = pqx(&["check", &m3, "--p", "3", "--q", "2", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let doc = json_of(&o);
    assert_eq!(doc["holds"], Value::Bool(false));
    assert_eq!(doc["witness"].as_array().unwrap().len(), 3);

    let o = pqx(&["check", "/nonexistent/file.hg", "--p", "3", "--q", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());

    let o = pqx(&["check", &data("out_of_range.hg"), "--p", "3", "--q", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(pqx(&["phi", "--n", "x"]).status.code(), Some(2));
    assert_eq!(pqx(&["phi", "--n", "3", "--k", "2", "--p", "1", "--q", "3"]).status.code(), Some(2));
    assert_eq!(pqx(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(pqx(&["construct", "--family", "split", "--n", "6"]).status.code(), Some(2));
    assert_eq!(pqx(&["--help"]).status.code(), Some(0));
}

#[test]
fn phi_and_construct() {
    let o = pqx(&["phi", "--n", "10", "--k", "2", "--p", "5", "--q", "3"]);
    assert_eq!(stdout(&o).trim(), "17");

    let o = pqx(&["construct", "--family", "split", "--n", "6", "--k", "2", "--t", "2", "--r", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let h = pq_extremal::Hypergraph::parse(&stdout(&o)).unwrap();
    assert_eq!(h.edge_count(), 9);

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("m.hg");
    let f = file.to_str().unwrap();
    let o = pqx(&["construct", "--family", "member", "--n", "7", "--k", "2", "--t", "2", "--r", "1", "--seed", "9", "-o", f]);
    assert_eq!(o.status.code(), Some(0));
    let o = pqx(&["check", f, "--p", "6", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn kneser_petersen() {
    let o = pqx(&["kneser", "--n", "5", "--k", "2", "--p", "2", "--q", "2", "--chi-f", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json_of(&o);
    let half = serde_json::json!({ "num": 5, "den": 2 });
    assert_eq!(doc["chi_f"]["lp"], half);
    assert_eq!(doc["chi_f"]["transitive"], half);

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("petersen.hg");
    let o = pqx(&["kneser", "--n", "5", "--k", "2", "--p", "2", "--q", "2", "--emit", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let h = pq_extremal::Hypergraph::parse(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!((h.n(), h.edge_count()), (10, 15));
    let labels = std::fs::read_to_string(dir.path().join("petersen.hg.labels")).unwrap();
    assert!(labels.lines().any(|l| l == "10\t4 5"));

    let o = pqx(&["kneser", "--n", "9", "--k", "2", "--p", "2", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = pqx(&["kneser", "--n", "12", "--k", "2", "--p", "2", "--q", "2"]);
    assert_eq!(o.status.code(), Some(2), "66 vertices exceed the default guard");
    let o = pqx(&["kneser", "--n", "12", "--k", "2", "--p", "2", "--q", "2", "--max-vertices", "70"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn extremal_budget_and_workers() {
    let one = pqx(&["extremal", "--n", "7", "--k", "2", "--p", "5", "--q", "3", "--json", "--workers", "1"]);
    let four = pqx(&["extremal", "--n", "7", "--k", "2", "--p", "5", "--q", "3", "--json", "--workers", "4"]);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(json_of(&one)["complete"], Value::Bool(true));

    let o = pqx(&["extremal", "--n", "7", "--k", "2", "--p", "5", "--q", "3", "--json", "--budget-nodes", "5", "--stats"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json_of(&o);
    assert_eq!(doc["complete"], Value::Bool(false));
    assert!(doc["stats"]["nodes"].as_u64().is_some());
    assert_schema_valid(&doc);

    let o = pqx(&["extremal", "--n", "5", "--k", "2", "--p", "4", "--q", "3", "--oracle", "--json"]);
    assert_eq!(json_of(&o)["method"], "oracle");
}

#[test]
fn verify_theorem6_capped() {
    let o = pqx(&["verify", "--suite", "theorem6", "--max-p", "5", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json_of(&o);
    let claims = doc["claims"].as_array().unwrap();
    assert_eq!(claims.len(), 3);
    assert!(claims.iter().all(|c| c["status"] == "pass"));
    assert!(claims.iter().all(|c| c.get("elapsed_ms").is_none()));

    let o = pqx(&["verify", "--suite", "lemma5", "--max-n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("lemma5/n6"));

    let o = pqx(&["verify", "--suite", "theorem6", "--max-p", "4", "--timings", "--json"]);
    let doc = json_of(&o);
    assert!(doc["claims"][0]["elapsed_ms"].as_u64().is_some());
    assert_schema_valid(&doc);
}

#[test]
fn verify_full_registry_marks_large_n_skipped() {
    let o = pqx(&["verify", "--suite", "paper", "--json", "--workers", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let doc = json_of(&o);
    assert_schema_valid(&doc);
    let claims = doc["claims"].as_array().unwrap();
    let mut ids: Vec<&str> = claims.iter().map(|c| c["id"].as_str().unwrap()).collect();
    let total = ids.len();
    ids.sort_unstable();
    ids.dedup();
    assert_eq!(ids.len(), total, "claim ids are unique");
    let skipped: Vec<&Value> = claims.iter().filter(|c| c["status"] == "skipped").collect();
    assert!(skipped.len() >= 2);
    assert!(skipped.iter().all(|c| c["reason"].as_str().is_some_and(|r| r.contains("2p^2"))));
}

#[test]
fn golden_outputs() {
    golden("phi", &["phi", "--n", "10", "--k", "2", "--p", "5", "--q", "3", "--json"], 0);
    golden(
        "construct_split",
        &["construct", "--family", "split", "--n", "6", "--k", "2", "--t", "2", "--r", "0", "--json"],
        0,
    );
    golden(
        "construct_member_seeded",
        &["construct", "--family", "member", "--n", "6", "--k", "3", "--t", "1", "--r", "2", "--seed", "7", "--json"],
        0,
    );
    golden(
        "kneser_petersen",
        &["kneser", "--n", "5", "--k", "2", "--p", "2", "--q", "2", "--alpha", "--chi", "--chi-f", "--json"],
        0,
    );
    golden("extremal", &["extremal", "--n", "6", "--k", "2", "--p", "4", "--q", "3", "--json"], 0);
    golden("sarkaria", &["sarkaria", "--n", "5", "--k", "2", "--p", "3", "--q", "2", "--json"], 0);
    golden("check_matching3", &["check", &data("matching3.hg"), "--p", "3", "--q", "2", "--json"], 1);
    golden("verify_theorem6", &["verify", "--suite", "theorem6", "--max-p", "5", "--json"], 0);
    golden("verify_corollary", &["verify", "--suite", "corollary", "--json"], 0);
}
