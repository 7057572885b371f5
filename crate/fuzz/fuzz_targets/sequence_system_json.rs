#![no_main]

use libfuzzer_sys::fuzz_target;
use turex_core::toolkit::{
    find_sequential_sunflower, validate_sequential_sunflower, SequenceSystem,
};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(w) = SequenceSystem::from_json_str(text) else {
        return;
    };
    if w.k() <= 4 && w.len() <= 32 {
        if let Some(cert) = find_sequential_sunflower(&w, 2) {
            validate_sequential_sunflower(&w, &cert, 2).expect("certificate re-validates");
        }
    }
});
