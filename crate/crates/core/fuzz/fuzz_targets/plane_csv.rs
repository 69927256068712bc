#![no_main]

use libfuzzer_sys::fuzz_target;
use misgame::formats::{read_plane_csv, write_plane_csv};

fuzz_target!(|data: &[u8]| {
    if let Ok(p) = read_plane_csv(data) {
        let mut out = Vec::new();
        write_plane_csv(&mut out, &p).unwrap();
        assert_eq!(read_plane_csv(out.as_slice()).unwrap().cells.len(), p.cells.len());
    }
});
