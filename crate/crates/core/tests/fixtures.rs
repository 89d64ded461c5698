use std::path::PathBuf;

use semisimplicial::fixtures::{builtin, NAMES};
use semisimplicial::format::FixtureDocument;

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

// Set SSET_REGENERATE_FIXTURES=1 to rewrite the corpus from the built-ins.
#[test]
fn corpus_matches_builtins() {
    let regenerate = std::env::var_os("SSET_REGENERATE_FIXTURES").is_some();
    for name in NAMES {
        let path = dir().join(format!("{name}.json"));
        let expected = builtin(name).unwrap().to_json().unwrap();
        if regenerate {
            std::fs::write(&path, format!("{expected}\n")).unwrap();
        }
        let doc = FixtureDocument::load(&path).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(doc.to_json().unwrap(), expected, "{name}");
    }
}

#[test]
fn every_file_is_a_builtin_and_round_trips() {
    let mut files: Vec<_> = std::fs::read_dir(dir()).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert!(files.len() >= NAMES.len());
    for path in files {
        let stem = path.file_name().unwrap().to_str().unwrap().strip_suffix(".json").unwrap().to_string();
        assert!(NAMES.contains(&stem.as_str()), "{stem} is not a built-in");
        let doc = FixtureDocument::load(&path).unwrap();
        let again = FixtureDocument::from_json(&doc.to_json().unwrap()).unwrap();
        assert_eq!(again.to_json().unwrap(), doc.to_json().unwrap());
    }
}

#[test]
fn corpus_sizes() {
    let count = |suffix: &str| NAMES.iter().filter(|n| n.ends_with(suffix)).count();
    assert!(count(".ss") >= 10);
    let non_unital = NAMES
        .iter()
        .filter(|n| matches!(builtin(n), Some(FixtureDocument::Category(c)) if !c.is_unital()))
        .count();
    assert!(non_unital >= 5);
}
