use std::path::PathBuf;
use std::sync::Arc;

use acrewrite::io::{self, Document, IoError};
use acrewrite::prelude::*;

fn data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data")
}

fn files() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(data()).unwrap().map(|e| e.unwrap().path()).collect();
    v.sort();
    v
}

#[test]
fn bundled_files_are_canonical() {
    assert!(files().len() >= 8);
    for path in files() {
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = io::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(io::serialize(&doc), io::canonicalize(&text).unwrap());
        assert_eq!(io::canonicalize(&text).unwrap(), text, "{} is not canonical", path.display());
    }
}

#[test]
fn edge_rule_files_are_the_edge_rules() {
    let fl = Flavor::Directed;
    let plus = io::load(data().join("e_plus.json")).unwrap().into_rulewc().unwrap();
    let minus = io::load(data().join("e_minus.json")).unwrap().into_rulewc().unwrap();
    assert_eq!(plus.rule, Rule::edge_addition(fl));
    assert_eq!(minus.rule, Rule::edge_deletion(fl));
    assert!(minus.cond.is_true());

    // e+ may fire exactly where the two vertices are not linked 0 -> 1
    let linked = Arc::new(Graph::path(fl, 2));
    let want = Condition::not(Condition::exists_plain(Morphism::inclusion(plus.rule.input().clone(), linked).unwrap()).unwrap());
    assert_eq!(plus.cond, want);
}

#[test]
fn reordered_input_canonicalizes() {
    let text = r#"{"kind": "graph", "format_version": 1,
        "payload": {"vertices": [3, 1], "edges": [{"ends": [3, 1], "id": 9}], "flavor": "undirected"}}"#;
    let canon = io::canonicalize(text).unwrap();
    let g = io::parse(&canon).unwrap().into_graph().unwrap();
    assert_eq!(g.vertices(), &[1, 3]);
    assert_eq!(io::canonicalize(&canon).unwrap(), canon);
}

#[test]
fn unknown_endpoint_is_an_invariant_violation() {
    let text = r#"{"format_version": 1, "kind": "graph",
        "payload": {"flavor": "directed", "vertices": [0], "edges": [{"id": 0, "ends": [0, 5]}]}}"#;
    let err = io::parse(text).unwrap_err();
    assert!(matches!(err, IoError::InvariantViolation { .. }), "{err}");
    assert_eq!(err.code(), "InvariantViolation");
}

#[test]
fn non_incidence_preserving_morphism_is_rejected() {
    let text = r#"{"format_version": 1, "kind": "morphism", "payload": {
        "dom": {"flavor": "directed", "vertices": [0, 1], "edges": [{"id": 0, "ends": [0, 1]}]},
        "cod": {"flavor": "directed", "vertices": [0, 1], "edges": [{"id": 0, "ends": [0, 1]}]},
        "vmap": {"0": 1, "1": 0}, "emap": {"0": 0}}}"#;
    assert!(matches!(io::parse(text), Err(IoError::InvariantViolation { .. })));
}

#[test]
fn other_versions_are_refused() {
    let text = r#"{"format_version": 2, "kind": "graph", "payload": {}}"#;
    assert!(matches!(io::parse(text), Err(IoError::SchemaVersionMismatch { found: 2 })));
}

#[test]
fn syntax_errors_carry_a_position() {
    let err = io::parse("{\n  \"format_version\": 1,\n  oops\n}").unwrap_err();
    match err {
        IoError::Parse { line, .. } => assert_eq!(line, 3),
        e => panic!("{e}"),
    }
}

#[test]
fn traces_and_reports_round_trip() {
    let fl = Flavor::Directed;
    let host = Arc::new(Graph::path(fl, 2));
    let r = RuleWC::plain(Rule::vertex_deletion(fl));
    let m = &enumerate_matches(&r, &host, Semantics::Sqpo).unwrap()[0];
    let step = apply(&r, &host, m, Semantics::Sqpo).unwrap();
    let doc = Document::Trace(io::trace_doc(&step));
    let text = io::serialize(&doc);
    assert_eq!(io::canonicalize(&text).unwrap(), text);

    let reports = acrewrite::laws::run_suite(&acrewrite::laws::SuiteConfig {
        only: vec!["mono-into-coproduct".into()],
        ..Default::default()
    })
    .unwrap();
    let text = io::serialize(&Document::Report(reports.clone()));
    match io::parse(&text).unwrap() {
        Document::Report(back) => assert_eq!(back, reports),
        d => panic!("{}", d.kind()),
    }
}

#[test]
fn save_and_load() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let g = Graph::cycle(Flavor::Undirected, 3);
    io::save(&Document::Graph(g.clone()), &path).unwrap();
    assert_eq!(io::load(&path).unwrap().into_graph().unwrap(), g);
    assert_eq!(io::load(dir.path().join("missing.json")).unwrap_err().code(), "Io");
}
