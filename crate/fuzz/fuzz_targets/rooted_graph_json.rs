#![no_main]

use libfuzzer_sys::fuzz_target;
use turex_core::RootedGraph;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = RootedGraph::from_json_str(text) {
        // whatever parses must survive a round trip unchanged
        let again = RootedGraph::from_json_value(g.to_json()).expect("re-parse");
        assert_eq!(again, g);
    }
});
