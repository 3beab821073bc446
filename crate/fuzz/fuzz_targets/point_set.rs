#![no_main]

use libfuzzer_sys::fuzz_target;
use trisum::io::{format_point_set, parse_point_set};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(set) = parse_point_set(text) else { return };
    let again = parse_point_set(&format_point_set(&set)).expect("formatted sets parse");
    assert_eq!(set, again);
    if set.dim() == 2 && set.len() <= 64 {
        let _ = trisum::triangulation::tr(&set);
    }
});
