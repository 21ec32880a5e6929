#![no_main]

use libfuzzer_sys::fuzz_target;
use mtgames::strategy::{parse_strategy, serialize_strategy};
use mtgames::StateSet;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_strategy(text) {
        let text = serialize_strategy(&f, &StateSet::empty(0));
        assert_eq!(parse_strategy(&text).unwrap(), f);
    }
});
