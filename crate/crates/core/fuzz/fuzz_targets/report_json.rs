#![no_main]

use libfuzzer_sys::fuzz_target;
use misgame::formats::{parse_report_json, report_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(r) = parse_report_json(text) {
        parse_report_json(&report_to_json(&r)).unwrap();
    }
});
