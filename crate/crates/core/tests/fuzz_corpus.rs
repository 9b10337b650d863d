//! Replays the checked-in fuzz corpus through the same entry points as the
//! fuzz targets, so the seeds stay meaningful on stable toolchains.

use std::fs;
use std::path::PathBuf;

use tenpoints::bench::parse_suite;
use tenpoints::chirotope::{decode_b16_record, parse_points};
use tenpoints::{Chirotope, KPartiteGraph};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn text(bytes: &[u8]) -> &str {
    std::str::from_utf8(bytes).unwrap()
}

#[test]
fn kpg_seeds() {
    for (name, data) in seeds("parse_kpg") {
        let parsed = KPartiteGraph::parse_kpg(text(&data));
        assert_eq!(parsed.is_ok(), !name.starts_with("bad"), "{name}");
    }
    let mut gz = 0;
    for (name, data) in seeds("read_kpg") {
        let g = KPartiteGraph::read_kpg(&data[..]);
        assert_eq!(g.is_ok(), !name.starts_with("bad"), "{name}");
        gz += usize::from(name.ends_with(".gz"));
    }
    assert!(gz > 0);
}

#[test]
fn chirotope_and_point_seeds() {
    for (name, data) in seeds("parse_chirotope") {
        let chi = Chirotope::parse_text(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(Chirotope::parse_text(&chi.to_text()).unwrap(), chi);
    }
    for (name, data) in seeds("parse_points") {
        let _ = parse_points(text(&data)).map(|p| Chirotope::from_points(&p)).map_err(|e| format!("{name}: {e}"));
    }
    for (name, data) in seeds("decode_b16") {
        assert_eq!(decode_b16_record(&data).is_ok(), data.len() == 40, "{name}");
    }
}

#[test]
fn suite_seeds() {
    for (name, data) in seeds("parse_suite") {
        parse_suite(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
