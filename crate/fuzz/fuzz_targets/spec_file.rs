#![no_main]

use libfuzzer_sys::fuzz_target;
use mtgames::spec::{parse_spec_file, serialize_spec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = parse_spec_file(text) {
        assert_eq!(parse_spec_file(&serialize_spec(&spec)).unwrap(), spec);
    }
});
