#![no_main]

use libfuzzer_sys::fuzz_target;
use misgame::formats::{read_sweep_csv, write_sweep_csv};

fuzz_target!(|data: &[u8]| {
    if let Ok(rows) = read_sweep_csv(data) {
        let mut out = Vec::new();
        write_sweep_csv(&mut out, &rows).unwrap();
        let again = read_sweep_csv(out.as_slice()).unwrap();
        assert_eq!(again.len(), rows.len());
    }
});
