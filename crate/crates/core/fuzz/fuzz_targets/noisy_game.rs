#![no_main]

use libfuzzer_sys::fuzz_target;
use misgame::formats::parse_noisy_game;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    // no base directory: path references must be refused, never opened
    if let Ok(ng) = parse_noisy_game(text, None) {
        ng.spec.validate().unwrap();
    }
});
