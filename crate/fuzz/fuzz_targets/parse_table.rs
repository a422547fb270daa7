#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(t) = annulus::io::parse_table(s) {
            assert_eq!(t.trace.len(), t.algebra.dim());
        }
    }
});
