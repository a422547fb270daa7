#![no_main]
use annulus::category::quantum::{format_spin, parse_spin};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(twice) = parse_spin(s) {
            assert_eq!(parse_spin(&format_spin(twice)).unwrap(), twice);
        }
    }
});
