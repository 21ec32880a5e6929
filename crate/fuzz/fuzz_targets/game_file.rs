#![no_main]

use libfuzzer_sys::fuzz_target;
use mtgames::{load_game, serialize_game};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = load_game(text) {
        let again = load_game(&serialize_game(&g)).expect("serialized game must parse");
        assert_eq!(again, g);
    }
});
