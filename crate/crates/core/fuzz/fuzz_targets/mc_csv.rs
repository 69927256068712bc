#![no_main]

use libfuzzer_sys::fuzz_target;
use misgame::formats::{read_mc_csv, write_mc_csv};

fuzz_target!(|data: &[u8]| {
    if let Ok(e) = read_mc_csv(data) {
        let mut out = Vec::new();
        write_mc_csv(&mut out, &e).unwrap();
        assert_eq!(read_mc_csv(out.as_slice()).unwrap().reps, e.reps);
    }
});
