#![no_main]

use libfuzzer_sys::fuzz_target;
use turex_core::turan::TuranRecord;

fuzz_target!(|data: &[u8]| {
    if let Ok(line) = std::str::from_utf8(data) {
        let _ = TuranRecord::from_line(line);
    }
});
