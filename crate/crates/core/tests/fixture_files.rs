use std::fs;
use std::path::PathBuf;

use oddtrans::format;
use oddtrans::generators::{self, fixtures};

fn read(name: &str) -> format::LabeledHypergraph {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    format::parse(&fs::read_to_string(&path).unwrap()).unwrap()
}

#[test]
fn shipped_fixtures_match_generators() {
    for (name, g) in fixtures() {
        let parsed = read(&format!("{name}.hg"));
        assert_eq!(parsed.graph, g, "{name}");
        assert_eq!(parsed.labels, (1..=g.n()).map(|v| v.to_string()).collect::<Vec<_>>());
    }
    assert_eq!(read("pp3.hg").graph, generators::projective_plane(3).unwrap());
    assert_eq!(read("pp5.hg").graph, generators::projective_plane(5).unwrap());
    assert_eq!(read("simplex4.hg").graph, generators::simplex(4).unwrap());
    assert_eq!(read("cayley7_4.hg").graph, generators::cayley(7, 4).unwrap());
}

#[test]
fn malformed_fixture_is_rejected() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/malformed.hg");
    let err = format::parse(&fs::read_to_string(path).unwrap()).unwrap_err();
    assert!(err.to_string().starts_with("line 3"));
}
