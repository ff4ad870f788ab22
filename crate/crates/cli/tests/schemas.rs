//! Every JSON output validates against the schema shipped in `schemas/`.

use std::path::PathBuf;
use std::process::Command;

fn run_json(args: &[&str]) -> serde_json::Value {
    let out = Command::new(env!("CARGO_BIN_EXE_qct"))
        .args(args)
        .output()
        .expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("{args:?}: invalid JSON: {e}"))
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas")
        .join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("read {path:?}: {e}"));
    let value: serde_json::Value = serde_json::from_str(&text).expect("schema is JSON");
    jsonschema::validator_for(&value).expect("schema compiles")
}

fn quiver(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../quivers")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn assert_valid(validator: &jsonschema::Validator, instance: &serde_json::Value) {
    if let Err(err) = validator.validate(instance) {
        panic!("schema violation: {err}");
    }
}

#[test]
fn check_output_matches_schema() {
    let v = schema("admissibility-report.schema.json");
    for (file, n) in [("three_cycles.q", "3"), ("three_cycles.q", "2"), ("middle_loop.q", "2")] {
        assert_valid(&v, &run_json(&["check", &quiver(file), "--n", n, "--format", "json"]));
    }
}

#[test]
fn flow_paths_output_matches_schema() {
    let v = schema("flow-paths.schema.json");
    for file in ["two_loops.q", "three_cycles.q", "lattice23.q"] {
        assert_valid(&v, &run_json(&["flow-paths", &quiver(file), "--format", "json"]));
    }
}

#[test]
fn degree_output_matches_schema() {
    let v = schema("degree.schema.json");
    assert_valid(&v, &run_json(&["degree", &quiver("lattice23.q"), "--format", "json"]));
}

#[test]
fn module_and_subcats_output_match_schema() {
    let v = schema("subcategories.schema.json");
    assert_valid(
        &v,
        &run_json(&["module", &quiver("three_cycles.q"), "--n", "3", "--format", "json"]),
    );
    assert_valid(
        &v,
        &run_json(&["subcats", &quiver("two_loops.q"), "--n", "2", "--format", "json"]),
    );
}

#[test]
fn lattice_output_matches_schema() {
    let v = schema("ct-lattice.schema.json");
    assert_valid(&v, &run_json(&["lattice", &quiver("lattice23.q"), "--format", "json"]));
}

#[test]
fn verify_output_matches_schema() {
    let v = schema("verify-report.schema.json");
    assert_valid(
        &v,
        &run_json(&["verify", &quiver("three_cycles.q"), "--n", "3", "--format", "json"]),
    );
    // a cycle family produces an array of reports
    let dir = std::env::temp_dir().join("qct-schema-test");
    std::fs::create_dir_all(&dir).unwrap();
    let cycle = dir.join("a4t.q");
    std::fs::write(&cycle, "1 -> 2\n2 -> 3\n3 -> 4\n4 -> 1\n").unwrap();
    assert_valid(
        &v,
        &run_json(&["verify", cycle.to_str().unwrap(), "--n", "2", "--format", "json"]),
    );
}

#[test]
fn nz_output_matches_schema() {
    let v = schema("nz.schema.json");
    assert_valid(&v, &run_json(&["nz", &quiver("lattice23.q"), "--n", "3", "--format", "json"]));
}

#[test]
fn ar_quiver_output_matches_schema() {
    let v = schema("ar-quiver.schema.json");
    assert_valid(
        &v,
        &run_json(&["ar-quiver", &quiver("two_loops.q"), "--format", "json"]),
    );
}

#[test]
fn divisor_lattice_schema_covers_library_output() {
    // the divisor lattice is a library-level serialization; check it here
    // against its schema
    let v = schema("divisor-lattice.schema.json");
    for n in [1u64, 12, 30] {
        let lat = qct_core::admissibility::divisor_lattice(n);
        assert_valid(&v, &lat.to_json());
    }
}
