use std::path::PathBuf;

use linfty::cli::{run_check, Selection};
use linfty::io::{fixtures, random_instance, Model, RandomKind, RandomParams, StructureFile};
use linfty::{Bounds, Error};

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"))
}

fn shipped() -> Vec<(&'static str, StructureFile)> {
    vec![
        ("fixtureA", fixtures::fixture_a()),
        ("corrupted", fixtures::corrupted()),
        ("balanced", fixtures::balanced()),
    ]
}

/// `LINFTY_BLESS=1 cargo test --test io` rewrites the fixture files.
#[test]
fn shipped_fixtures_are_the_builders_output() {
    for (name, file) in shipped() {
        let text = Model::resolve(file).unwrap().save();
        let path = fixture_path(name);
        if std::env::var_os("LINFTY_BLESS").is_some() {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, &text).unwrap();
        }
        let on_disk = std::fs::read_to_string(&path).unwrap();
        assert_eq!(on_disk, text, "{name} is stale");
    }
}

#[test]
fn roundtrip_is_byte_identical() {
    for (name, _) in shipped() {
        let text = std::fs::read_to_string(fixture_path(name)).unwrap();
        let model = Model::from_text(&text).unwrap();
        assert_eq!(model.save(), text, "{name}");
        let again = Model::from_text(&model.save()).unwrap();
        assert_eq!(again.file(), model.file());
    }
}

#[test]
fn save_and_load_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    let model = Model::resolve(fixtures::fixture_a()).unwrap();
    model.save_to(&path).unwrap();
    assert_eq!(Model::load(&path).unwrap().file(), model.file());
}

#[test]
fn fixture_a_resolves_and_passes_jacobi() {
    let model = Model::load(fixture_path("fixtureA")).unwrap();
    let a = model.get_structure("A").unwrap();
    assert_eq!(a.space().dim(), 2);
    let v = run_check(&model, "check-jacobi", &Selection::default(), Bounds::default()).unwrap();
    assert!(v.pass, "{v}");
}

#[test]
fn loader_canonicalizes_order_and_signs() {
    // f⊙e = -(e⊙f) for odd letters, and two entries on one input add up
    let text = r#"{
      "spaces": {"E": [["e", -1], ["f", -1]]},
      "families": {"l": {"source": "E", "target": "E", "degree": 1, "terms": [
        {"inputs": ["f", "e"], "output": {"e": "1/2"}},
        {"inputs": ["e", "f"], "output": {"e": "-1/2"}},
        {"inputs": ["e", "e"], "output": {"f": "3"}}
      ]}}
    }"#;
    let model = Model::from_text(text).unwrap();
    let want = Model::resolve(fixtures::fixture_a()).unwrap();
    assert_eq!(model.get_family("l").unwrap(), want.get_family("l").unwrap());
    assert_eq!(model.file().families["l"], want.file().families["l"]);
}

#[test]
fn zero_denominator_is_a_parse_error_with_position() {
    let text = "{\n  \"spaces\": {\"E\": [[\"e\", -1]]},\n  \"families\": {\"l\": {\"source\": \"E\", \"target\": \"E\", \"degree\": 0,\n    \"terms\": [{\"inputs\": [\"e\"], \"output\": {\"e\": \"1/0\"}}]}}\n}";
    match Model::from_text(text) {
        Err(Error::Parse { line, column, message }) => {
            assert_eq!(line, 4);
            assert!(column > 0);
            assert!(message.contains("1/0"), "{message}");
        }
        other => panic!("expected a parse error, got {other:?}"),
    }
    assert!(matches!(Model::from_text("{\"spaces\": "), Err(Error::Parse { line: 1, .. })));
}

#[test]
fn unresolved_references_name_the_key() {
    let text = r#"{"spaces": {"E": [["e", -1]]},
      "families": {"l": {"source": "E", "target": "W", "degree": 1}}}"#;
    match Model::from_text(text) {
        Err(Error::Unresolved(m)) => assert!(m.contains("families.l.target") && m.contains("`W`"), "{m}"),
        other => panic!("{other:?}"),
    }
    let text = r#"{"spaces": {"E": [["e", -1]]},
      "families": {"l": {"source": "E", "target": "E", "degree": 1,
        "terms": [{"inputs": ["x"], "output": {"e": "1"}}]}}}"#;
    match Model::from_text(text) {
        Err(Error::Unresolved(m)) => assert!(m.contains("families.l.terms[0]"), "{m}"),
        other => panic!("{other:?}"),
    }
    let text = r#"{"spaces": {"E": [["e", -1]]}, "structures": {"A": {"brackets": "nope"}}}"#;
    assert!(matches!(Model::from_text(text), Err(Error::Unresolved(m)) if m.contains("structures.A")));
}

#[test]
fn degree_inconsistencies_name_the_key() {
    // l₂(e⊙e) of an even e has degree 1, but f sits in degree 0
    let text = r#"{"spaces": {"E": [["e", 0], ["f", 0]]},
      "families": {"l": {"source": "E", "target": "E", "degree": 1,
        "terms": [{"inputs": ["e", "e"], "output": {"f": "1"}}]}}}"#;
    match Model::from_text(text) {
        Err(Error::DegreeMismatch { key, expected, found }) => {
            assert!(key.starts_with("families.l.terms[0]"), "{key}");
            assert_eq!((expected, found), (1, 0));
        }
        other => panic!("{other:?}"),
    }
    let text = r#"{"spaces": {"E": [["e", -1]]},
      "families": {"t": {"source": "E", "target": "E", "degree": 0}},
      "structures": {"A": {"brackets": "t"}}}"#;
    assert!(matches!(Model::from_text(text), Err(Error::DegreeMismatch { key, .. }) if key.starts_with("structures.A")));
}

#[test]
fn random_files_are_deterministic_and_resolve() {
    let kinds = [
        RandomKind::GradedSpace,
        RandomKind::Family,
        RandomKind::Lie2Algebra,
        RandomKind::RepresentationFromModule,
        RandomKind::Perturbation,
    ];
    for kind in kinds {
        for seed in 0..5 {
            let a = random_instance(kind, seed, RandomParams::default()).unwrap();
            let b = random_instance(kind, seed, RandomParams::default()).unwrap();
            assert_eq!(a.to_text(), b.to_text());
            let m = Model::resolve(a.clone()).unwrap();
            assert_eq!(m.save(), a.to_text());
        }
    }
    let big = RandomParams {
        dim: 7,
        ..RandomParams::default()
    };
    assert!(matches!(
        random_instance(RandomKind::Lie2Algebra, 1, big),
        Err(Error::Truncation { .. })
    ));
}

#[test]
fn seed_one_lie2_algebra_of_dim_two_passes_jacobi() {
    let params = RandomParams {
        dim: 2,
        ..RandomParams::default()
    };
    let file = random_instance(RandomKind::Lie2Algebra, 1, params).unwrap();
    let model = Model::resolve(file).unwrap();
    let v = run_check(&model, "check-jacobi", &Selection::default(), Bounds::default()).unwrap();
    assert!(v.pass, "{v}");
}

#[test]
fn guaranteed_kinds_pass_their_checks() {
    let b = Bounds::new(4, 4).unwrap();
    for seed in 0..10 {
        for dim in 1..=4 {
            let params = RandomParams {
                dim,
                ..RandomParams::default()
            };
            let m = Model::resolve(random_instance(RandomKind::Lie2Algebra, seed, params).unwrap()).unwrap();
            assert!(run_check(&m, "check-jacobi", &Selection::default(), b).unwrap().pass);
            let m = Model::resolve(random_instance(RandomKind::RepresentationFromModule, seed, params).unwrap()).unwrap();
            let v = run_check(&m, "check-representation", &Selection::default(), b).unwrap();
            assert!(v.pass, "seed {seed} dim {dim}: {v}");
            assert!(run_check(&m, "check-action", &Selection::default(), b).unwrap().pass);
        }
    }
}

#[test]
fn perturbations_fail_the_recorded_check() {
    for seed in 0..10 {
        let file = random_instance(RandomKind::Perturbation, seed, RandomParams::default()).unwrap();
        let p = &file.meta["perturbation"];
        let check = p["check"].as_str().unwrap();
        let sel = Selection {
            structure: p.get("structure").and_then(|v| v.as_str()).map(String::from),
            action: p.get("action").and_then(|v| v.as_str()).map(String::from),
            candidate: p.get("candidate").and_then(|v| v.as_str()).map(String::from),
            with: None,
        };
        let model = Model::resolve(file.clone()).unwrap();
        let v = run_check(&model, check, &sel, Bounds::new(4, 4).unwrap()).unwrap();
        assert!(!v.pass, "seed {seed}: {check} should fail");
    }
}
