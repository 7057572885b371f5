#![no_main]

use libfuzzer_sys::fuzz_target;
use turex_core::turan::{canonical_form, parse_canonical};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = parse_canonical(text) {
        if let Some(canon) = canonical_form(&g) {
            let back = parse_canonical(&canon).expect("canonical strings parse");
            assert_eq!(canonical_form(&back).as_deref(), Some(canon.as_str()));
        }
    }
});
