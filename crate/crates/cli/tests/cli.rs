use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn genflag(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genflag")).current_dir(dir).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn setup() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let files = [
        ("shift1.json", r#"{"window": null, "tail_shift": 1}"#),
        ("identity.json", r#"{"window": null}"#),
        ("swap.json", r#"{"window": [-1, 1], "matrix": [["0", "1"], ["1", "0"]]}"#),
        ("upper_tri.json", r#"{"window": [-1, 1], "matrix": [["1", "2", "0"], ["0", "1", "-1/2"], ["0", "0", "3"]]}"#),
        ("sato_upper.json", r#"{"window": [-1, 1], "matrix": [["2", "5"], ["0", "1"]]}"#),
        ("rot.json", r#"{"window": [-1, 1], "matrix": [["0", "1"], ["-1", "0"]]}"#),
        ("singular.json", r#"{"window": [-1, 1], "matrix": [["1", "1"], ["1", "1"]]}"#),
        ("broken.json", r#"{"window": [-1, 1], "matrix": [["1"#),
        ("schema.json", r#"{"index_kind": "sato_split", "cuts": {"after": [-1]}}"#),
        ("point.json", r#"{"window": [-1, 1], "chain": [{"cut": -1, "basis": [["0", "1"]]}]}"#),
    ];
    for (name, text) in files {
        std::fs::write(dir.path().join(name), text).unwrap();
    }
    dir
}

#[test]
fn shift_degree_report() {
    let dir = setup();
    let out = genflag(dir.path(), &["degree", "--scenario", "sato", "--op", "shift1.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["per_cut"]["-1"], 1);
    assert_eq!(v["eligible"], false);
}

#[test]
fn membership_exit_codes() {
    let dir = setup();
    let out = genflag(dir.path(), &["member", "--group", "eventually-identity", "--op", "identity.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["member"], true);
    let out = genflag(dir.path(), &["member", "--group", "eligible", "--op", "shift1.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["member"], false);
    let cases = [
        ("mackey", "shift1.json", 0),
        ("w-aligned", "shift1.json", 0),
        ("stabilizer", "swap.json", 1),
        ("stabilizer", "sato_upper.json", 0),
        ("orthogonal", "swap.json", 0),
        ("symplectic", "swap.json", 1),
        ("symplectic", "rot.json", 0),
        ("orthogonal", "shift1.json", 1),
    ];
    for (group, op, code) in cases {
        let out = genflag(dir.path(), &["member", "--group", group, "--op", op, "--window", "-2:2"]);
        assert_eq!(out.status.code(), Some(code), "{group} {op}");
    }
}

#[test]
fn upper_triangular_stabilizes_reference() {
    let dir = setup();
    let out = genflag(dir.path(), &["act", "--scenario", "ex2_3", "--op", "upper_tri.json", "--point", "reference"]);
    assert_eq!(out.status.code(), Some(0));
    let reference = genflag(dir.path(), &["validate", "--scenario", "ex2_3", "--point", "reference"]);
    assert_eq!(json(&out)["point"], json(&reference)["point"]);
}

#[test]
fn direct_and_annihilator_actions_agree() {
    let dir = setup();
    let args = ["act", "--op", "swap.json", "--point", "point.json", "--window", "-3:3"];
    let a = genflag(dir.path(), &args);
    let mut direct = args.to_vec();
    direct.push("--direct");
    let b = genflag(dir.path(), &direct);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let out = genflag(dir.path(), &["act", "--direct", "--op", "shift1.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dual_and_symmetric() {
    let dir = setup();
    let out = genflag(dir.path(), &["symmetric", "--scenario", "ex2_2"]);
    assert_eq!(json(&out)["symmetric"], false);
    let out = genflag(dir.path(), &["symmetric", "--schema", "schema.json"]);
    assert_eq!(json(&out)["symmetric"], true);
    let out = genflag(dir.path(), &["dual", "--scenario", "ex2_2"]);
    assert_eq!(json(&out)["schema"]["index_kind"], "negative_ints");
    let out = genflag(dir.path(), &["dual", "--scenario", "ex2_2", "--point", "reference"]);
    assert_eq!(out.status.code(), Some(2));
    let out = genflag(dir.path(), &["dual", "--scenario", "ex2_4", "--point", "reference"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn malformed_input_exits_two() {
    let dir = setup();
    for args in [
        vec!["degree", "--op", "broken.json"],
        vec!["degree", "--op", "singular.json"],
        vec!["degree", "--op", "absent.json"],
        vec!["degree"],
        vec!["validate", "--scenario", "ex9"],
        vec!["validate", "--point", "reference", "--window", "3:1"],
        vec!["member", "--group", "orthogonal", "--scenario", "ex2_2", "--op", "identity.json"],
        vec!["verify", "no-such-suite"],
        vec!["frobnicate"],
    ] {
        let out = genflag(dir.path(), &args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn verify_reports_are_deterministic() {
    let dir = setup();
    let args = ["verify", "degree-additivity", "--seed", "7", "--trials", "30"];
    let a = genflag(dir.path(), &args);
    let b = genflag(dir.path(), &args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["passed"], true);
    assert_eq!(v["seed"], 7);
    for suite in ["example-2-scenarios", "isotropic-equivalence"] {
        let out = genflag(dir.path(), &["verify", suite, "--trials", "20"]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
    }
}

#[test]
fn out_file_and_normalized_documents() {
    let dir = setup();
    let out =
        genflag(dir.path(), &["validate", "--scenario", "ex2_3", "--op", "upper_tri.json", "--out", "report.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["operator"]["matrix"][1][2], "-1/2");
    // The normalized operator reads back to the same report.
    std::fs::write(dir.path().join("again.json"), serde_json::to_string(&v["operator"]).unwrap()).unwrap();
    let again = genflag(dir.path(), &["validate", "--scenario", "ex2_3", "--op", "again.json"]);
    assert_eq!(json(&again), v);
}
