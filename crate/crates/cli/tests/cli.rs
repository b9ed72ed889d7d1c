//! End-to-end runs of the `fole` binary against the fixture documents.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fole_cli::{parse_str, parse_workspace, LoadError};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn fole(ws: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fole")).arg("--workspace").arg(ws).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn join_output_matches_golden_files() {
    let ws = fixture("join.json");
    let json = fole(&ws, &["join", "D"]);
    assert_eq!(code(&json), 0, "{}", String::from_utf8_lossy(&json.stderr));
    assert_eq!(String::from_utf8(json.stdout).unwrap(), std::fs::read_to_string(fixture("join.expected.json")).unwrap());
    let csv = fole(&ws, &["--format", "csv", "join", "D"]);
    assert_eq!(code(&csv), 0);
    assert_eq!(String::from_utf8(csv.stdout).unwrap(), std::fs::read_to_string(fixture("join.expected.csv")).unwrap());
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let ws = fixture("join.json");
    for args in [&["join", "D"][..], &["sum", "D"], &["project", "D", "key"], &["--format", "csv", "sum", "D"]] {
        let a = fole(&ws, args);
        let b = fole(&ws, args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn join_fixture_has_three_rows_in_one_column() {
    let ws = parse_workspace(&fixture("join.json")).unwrap();
    let r = fole_cli::commands::cmd_join(&ws, "D").unwrap();
    let t = r.table.unwrap();
    assert_eq!(t.keys().len(), 3);
    assert_eq!(t.signature().arity().len(), 1);
    let mut vals: Vec<String> = t.rows().iter().map(|r| r.to_string()).collect();
    vals.sort();
    assert_eq!(vals, ["(1)", "(1)", "(2)"]);
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("join.csv");
    let o = fole(&fixture("join.json"), &["--format", "csv", "--out", out.to_str().unwrap(), "join", "D"]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(out).unwrap(), std::fs::read_to_string(fixture("join.expected.csv")).unwrap());
}

#[test]
fn fixture_document_loads_expected_entities() {
    let ws = parse_workspace(&fixture("join.json")).unwrap();
    assert_eq!(ws.typedomains.len(), 1);
    assert_eq!(ws.tables.len(), 3);
    assert_eq!(ws.databases.len(), 1);
}

#[test]
fn empty_document_is_an_empty_workspace() {
    for text in ["", "{}", "  \n"] {
        let ws = parse_str(text).unwrap();
        assert!(ws.tables.is_empty() && ws.databases.is_empty() && ws.shapes.is_empty());
    }
}

#[test]
fn single_table_join_echoes_the_table() {
    let text = std::fs::read_to_string(fixture("morphisms.json")).unwrap();
    let ws = parse_str(&text).unwrap();
    let r = fole_cli::commands::cmd_join(&ws, "E").unwrap();
    let t = r.table.unwrap();
    let tr = &ws.tables["TR"];
    // Same rows in key order; keys become one-element families.
    assert_eq!(t.rows(), tr.rows());
    let keys: Vec<String> = t.keys().iter().map(|k| k.to_string()).collect();
    assert_eq!(keys, ["(r1)", "(r2)", "(r3)"]);
}

#[test]
fn check_exit_codes_follow_the_contract() {
    let ws = fixture("morphisms.json");
    assert_eq!(code(&fole(&ws, &["check", "ok"])), 0);
    let bad = fole(&ws, &["check", "corrupt"]);
    assert_eq!(code(&bad), 1);
    let stdout = String::from_utf8(bad.stdout).unwrap();
    assert!(stdout.contains("\"X\""), "failing shape object is named: {stdout}");
    assert!(String::from_utf8(bad.stderr).unwrap().contains("fails at X"));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let ws = fixture("join.json");
    // Unknown entity, wrong kind, csv without a table.
    assert_eq!(code(&fole(&ws, &["join", "nope"])), 2);
    assert_eq!(code(&fole(&ws, &["check", "D"])), 2);
    assert_eq!(code(&fole(&ws, &["--format", "csv", "project", "D", "schema"])), 2);
    // Missing file and malformed JSON.
    assert_eq!(code(&fole(&dir.path().join("absent.json"), &["join", "D"])), 2);
    let broken = write_temp(&dir, "broken.json", "{\n  \"tables\": [\n    {\"name\": }\n");
    let o = fole(&broken, &["validate", "D"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8(o.stderr).unwrap().contains("line 3"));
}

#[test]
fn tuple_outside_the_incidence_names_the_key() {
    let text = std::fs::read_to_string(fixture("join.json")).unwrap();
    // Give sort q only value 2, then declare a q-typed row holding 1.
    let text = text
        .replace(r#""sorts": ["p"]"#, r#""sorts": ["p", "q"]"#)
        .replace(r#"["2", "p"]]"#, r#"["2", "p"], ["2", "q"]]"#)
        .replace(r#""attrs": [["a", "p"]]"#, r#""attrs": [["a", "q"]]"#);
    match parse_str(&text) {
        Err(LoadError::Validation { kind, name, law }) => {
            assert_eq!((kind, name.as_str()), ("table", "TL"));
            assert!(law.contains("k1"), "{law}");
        }
        other => panic!("expected a validation error, got {other:?}"),
    }
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "bad.json", &text);
    let o = fole(&p, &["join", "D"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8(o.stderr).unwrap().contains("k1"));
}

#[test]
fn dangling_references_are_resolution_errors() {
    let text = std::fs::read_to_string(fixture("join.json")).unwrap().replace(r#"["R", "TR"]"#, r#"["R", "TX"]"#);
    assert!(matches!(parse_str(&text), Err(LoadError::Resolution { .. })));
}

#[test]
fn varying_type_domains_are_rejected_by_join() {
    let text = std::fs::read_to_string(fixture("join.json")).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    // T_R moves to a larger domain B; the arrow into it needs an infomorphism.
    doc["typedomains"].as_array_mut().unwrap().push(serde_json::json!(
        { "name": "B", "sorts": ["p"], "values": ["1", "2", "3"], "incidence": [["1", "p"], ["2", "p"], ["3", "p"]] }
    ));
    doc["signatures"][2]["typedomain"] = serde_json::json!("B");
    doc["infomorphisms"] = serde_json::json!([
        { "name": "i", "source": "A", "target": "B", "f": [["p", "p"]], "g": [["1", "1"], ["2", "2"], ["3", "2"]] }
    ]);
    doc["databases"][0]["arrows"][1]["infomorphism"] = serde_json::json!("i");
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "vary.json", &doc.to_string());
    let o = fole(&p, &["join", "D"]);
    assert_eq!(code(&o), 2, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8(o.stderr).unwrap().contains("type domains"));
}

#[test]
fn universal_commands_pass_on_the_small_fixture() {
    let ws = fixture("universal.json");
    for args in [
        &["limit", "S"][..],
        &["colimit", "S"],
        &["kan", "left", "K", "S"],
        &["kan", "right", "K", "S"],
        &["groth", "I"],
        &["groth", "I", "--convention", "fibration"],
        &["validate", "arrow"],
    ] {
        let o = fole(&ws, args);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn colimit_glues_along_the_arrow() {
    let ws = parse_workspace(&fixture("universal.json")).unwrap();
    let r = fole_cli::commands::cmd_colimit(&ws, "S").unwrap();
    // {x, y} → z merges x, y, z; w stays apart.
    assert_eq!(r.result["vertex"].as_array().unwrap().len(), 2);
}
