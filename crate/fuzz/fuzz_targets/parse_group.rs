#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(g) = annulus::io::parse_group(s, 0) {
            assert!(g.order() > 0);
        }
    }
});
