#![no_main]
use std::sync::OnceLock;

use annulus::category::group::{symmetric_table, GroupBackend};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    static S3: OnceLock<GroupBackend> = OnceLock::new();
    let g = S3.get_or_init(|| GroupBackend::new(symmetric_table(3), None, 0).unwrap());
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(h) = annulus::io::parse_subgroup(s, g) {
            assert!(h.windows(2).all(|w| w[0] < w[1]) && h.iter().all(|&x| x < g.order()));
        }
    }
});
