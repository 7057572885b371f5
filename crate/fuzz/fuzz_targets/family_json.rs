#![no_main]

use libfuzzer_sys::fuzz_target;
use turex_core::obstructions::ObstructionFamily;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = ObstructionFamily::from_json_str(text);
    }
});
