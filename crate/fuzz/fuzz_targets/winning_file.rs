#![no_main]

use libfuzzer_sys::fuzz_target;
use mtgames::strategy::{parse_winning_set, serialize_winning_set};

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let n = n as usize;
    if let Ok(w) = parse_winning_set(text, n) {
        assert_eq!(parse_winning_set(&serialize_winning_set(&w), n).unwrap(), w);
    }
});
