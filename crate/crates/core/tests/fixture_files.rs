use wachspress::fixtures::{self, ALL_FIXTURES, TYPES_FILE};

#[test]
fn committed_fixtures_match_generated() {
    for name in ALL_FIXTURES {
        let built = fixtures::build(name).unwrap();
        let loaded = fixtures::load(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(loaded.vertices(), built.vertices(), "{name}");
        assert_eq!(loaded.facets(), built.facets(), "{name}");
        assert_eq!(loaded.incidence(), built.incidence(), "{name}");
    }
}

#[test]
fn committed_type_catalog_matches() {
    let text = std::fs::read_to_string(fixtures::fixture_dir().join(TYPES_FILE)).unwrap();
    assert_eq!(text, fixtures::types_json());
}

#[test]
fn write_all_round_trips() {
    let dir = std::env::temp_dir().join(format!("wachspress-fixtures-{}", std::process::id()));
    let written = fixtures::write_all(&dir).unwrap();
    assert_eq!(written.len(), ALL_FIXTURES.len() + 1);
    for name in ["pentagon", "cube-perturbed"] {
        let p = wachspress::polytope::Polytope::read_json(dir.join(format!("{name}.json"))).unwrap();
        assert_eq!(p.vertices(), fixtures::build(name).unwrap().vertices());
    }
    std::fs::remove_dir_all(&dir).unwrap();
}
