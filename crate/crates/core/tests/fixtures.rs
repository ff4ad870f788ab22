//! Checks pinned to the shipped quiver files: transcription sizes,
//! byte-identical round-trips, and a few spot values.

use qct_core::modules::{build_m, enumerate_indecomposables};
use qct_core::oracle::{verify_n_cluster_tilting, FieldSpec};
use qct_core::quiver::{Quiver, Shape};

fn fixture_text(name: &str) -> String {
    let path = format!("{}/../../quivers/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("read {path}: {e}"))
}

#[test]
fn three_cycles_file_roundtrips_byte_identically() {
    let text = fixture_text("three_cycles.q");
    let q = Quiver::parse(&text).unwrap();
    assert_eq!(q.vertex_count(), 12);
    assert_eq!(q.arrow_count(), 14);
    assert_eq!(q.to_text(), text);
}

#[test]
fn all_fixtures_roundtrip() {
    for name in ["middle_loop.q", "two_loops.q", "three_cycles.q", "lattice23.q", "loop_tail.q"] {
        let text = fixture_text(name);
        let q = Quiver::parse(&text).unwrap();
        assert_eq!(q.to_text(), text, "{name}");
        assert_eq!(Quiver::parse(&q.to_text()).unwrap(), q, "{name}");
    }
}

#[test]
fn transcription_degrees() {
    let q = Quiver::parse(&fixture_text("three_cycles.q")).unwrap();
    assert_eq!(q.degree_of("4").unwrap().pair(), (2, 1));
    assert_eq!(q.degree_of("1").unwrap().pair(), (1, 2));
    let c = Quiver::parse(&fixture_text("two_loops.q")).unwrap();
    assert_eq!(c.degree_of("3").unwrap().pair(), (2, 2));
    assert_eq!(c.classify_shape().unwrap(), Shape::Other);
}

#[test]
fn lattice23_is_connected_and_large() {
    let q = Quiver::parse(&fixture_text("lattice23.q")).unwrap();
    assert!(q.is_connected());
    assert_eq!(q.vertex_count(), 23);
    assert_eq!(q.arrow_count(), 23);
    assert_eq!(enumerate_indecomposables(&q).unwrap().len(), 47);
}

#[test]
fn wrong_level_generators_fail_verification_with_witness() {
    // the level-3 module is not 2-rigid, and the oracle finds a witness
    let q = Quiver::parse(&fixture_text("three_cycles.q")).unwrap();
    let m3 = build_m(&q, 3).unwrap();
    let f = FieldSpec::new(2).unwrap();
    let report = verify_n_cluster_tilting(&q, 2, &m3, f).unwrap();
    assert!(!report.pass);
    assert!(!report.counterexamples.is_empty());
}

#[test]
fn loop_tail_flow_path_values() {
    let q = Quiver::parse(&fixture_text("loop_tail.q")).unwrap();
    let fps = qct_core::admissibility::enumerate_flow_paths(&q).unwrap();
    assert_eq!(fps.len(), 2);
    let qvals: Vec<(usize, i8)> = fps
        .iter()
        .map(|fp| {
            let qv = qct_core::admissibility::q_values(&q, fp);
            (qv.k, qv.q)
        })
        .collect();
    // the loop contributes (k, q) = (2, 0), the tail (2, -1)
    assert!(qvals.contains(&(2, 0)));
    assert!(qvals.contains(&(2, -1)));
}
