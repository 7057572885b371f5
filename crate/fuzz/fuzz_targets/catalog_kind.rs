#![no_main]

use libfuzzer_sys::fuzz_target;
use turex_core::{make_catalog_tree, CatalogKind};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(kind) = text.parse::<CatalogKind>() {
        // keep trees small; huge legs only test the allocator
        let small = match kind {
            CatalogKind::SubdividedStar { s, t } => s.saturating_mul(t.saturating_add(1)) < 512,
            CatalogKind::Path { t } => t < 512,
            CatalogKind::Broom { s, t } => s.saturating_mul(t.saturating_add(1)) < 512,
            CatalogKind::Spider { s, t, t_prime } => {
                s.saturating_mul(t.saturating_add(1))
                    .saturating_add(t_prime)
                    < 512
            }
        };
        if small {
            let _ = make_catalog_tree(kind);
        }
    }
});
