#![no_main]

use libfuzzer_sys::fuzz_target;
use mtgames::benchgen::parse_room_boxes;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_room_boxes(text);
    }
});
