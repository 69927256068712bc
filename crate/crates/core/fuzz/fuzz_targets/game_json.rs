#![no_main]

use libfuzzer_sys::fuzz_target;
use misgame::formats::{game_to_json, parse_game_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_game_json(text) {
        assert_eq!(parse_game_json(&game_to_json(&g)).unwrap(), g);
    }
});
