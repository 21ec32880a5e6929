#![no_main]

use libfuzzer_sys::fuzz_target;
use mtgames::{parse_mt_formula, to_ltl};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = parse_mt_formula(text) {
        assert_eq!(parse_mt_formula(&to_ltl(&spec)).unwrap(), spec);
    }
});
