//! Replays the checked-in fuzz corpus through the round-trip checks of the
//! fuzz targets.

use std::fs;
use std::path::PathBuf;

use mtgames::benchgen::parse_room_boxes;
use mtgames::spec::{parse_spec_file, serialize_spec};
use mtgames::strategy::{parse_strategy, parse_winning_set, serialize_strategy, serialize_winning_set};
use mtgames::{load_game, parse_mt_formula, serialize_game, to_ltl, StateSet};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, Vec<u8>)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            (path.display().to_string(), fs::read(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn text(bytes: &[u8]) -> &str {
    std::str::from_utf8(bytes).unwrap()
}

#[test]
fn game_seeds() {
    for (name, data) in seeds("game_file") {
        let g = load_game(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(load_game(&serialize_game(&g)).unwrap(), g, "{name}");
    }
}

#[test]
fn spec_seeds() {
    for (name, data) in seeds("spec_file") {
        let spec = parse_spec_file(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse_spec_file(&serialize_spec(&spec)).unwrap(), spec, "{name}");
    }
}

#[test]
fn ltl_seeds() {
    for (name, data) in seeds("ltl_formula") {
        let spec = parse_mt_formula(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse_mt_formula(&to_ltl(&spec)).unwrap(), spec, "{name}");
    }
}

#[test]
fn strategy_seeds() {
    for (name, data) in seeds("strategy_file") {
        let f = parse_strategy(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}"));
        let again = serialize_strategy(&f, &StateSet::empty(0));
        assert_eq!(parse_strategy(&again).unwrap(), f, "{name}");
    }
}

#[test]
fn winning_seeds() {
    for (name, data) in seeds("winning_file") {
        let (&n, rest) = data.split_first().unwrap();
        let w = parse_winning_set(text(rest), n as usize).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse_winning_set(&serialize_winning_set(&w), n as usize).unwrap(), w, "{name}");
    }
}

#[test]
fn room_box_seeds() {
    for (name, data) in seeds("room_boxes") {
        parse_room_boxes(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
