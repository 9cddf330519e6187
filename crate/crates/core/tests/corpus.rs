use std::path::PathBuf;

use flk_core::spec_io::{emit_spec, parse_spec};

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn files(dir: &str, ext: &str) -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(corpus().join(dir))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == ext))
        .collect();
    out.sort();
    out
}

#[test]
fn parse_emit_parse_is_stable() {
    let all: Vec<PathBuf> = files("algebras", "flk").into_iter().chain(files("pairs", "flk")).collect();
    assert_eq!(all.len(), 10);
    for path in all {
        let text = std::fs::read_to_string(&path).unwrap();
        let first = parse_spec(&text).unwrap_or_else(|d| panic!("{}: {d}", path.display()));
        let again = parse_spec(&emit_spec(&first)).unwrap();
        assert_eq!(first, again, "{}", path.display());
        assert_eq!(emit_spec(&first), emit_spec(&again));
    }
}

#[test]
fn negative_spec_files_give_their_codes() {
    let manifest = std::fs::read_to_string(corpus().join("negative/expected.txt")).unwrap();
    let mut checked = 0;
    for line in manifest.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let cols: Vec<&str> = line.split_whitespace().collect();
        let (file, exit, code) = (cols[0], cols[1], cols[2]);
        if exit != "2" {
            continue;
        }
        let text = std::fs::read_to_string(corpus().join("negative").join(file)).unwrap();
        let d = parse_spec(&text).expect_err(file);
        assert_eq!(d.code, code, "{file}");
        assert!(d.line > 0 && d.column > 0, "{file}: {d}");
        checked += 1;
    }
    assert_eq!(checked, 6);
}
