#![no_main]

use libfuzzer_sys::fuzz_target;
use turex_core::toolkit::BipartiteGraph;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(h) = BipartiteGraph::from_json_str(text) {
        let again = serde_json::to_string(&h).unwrap();
        assert_eq!(BipartiteGraph::from_json_str(&again).unwrap(), h);
    }
});
