#![no_main]

use libfuzzer_sys::fuzz_target;
use turex_core::turan::{fit_exponent, parse_points};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(points) = parse_points(text) {
        let _ = fit_exponent(&points);
    }
});
